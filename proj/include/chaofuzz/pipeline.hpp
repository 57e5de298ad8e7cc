#pragma once

// End-to-end encryption and decryption built from the phase modules.

#include "chaofuzz/chaos.hpp"
#include "chaofuzz/image.hpp"
#include "chaofuzz/imgio.hpp"
#include "chaofuzz/keyschedule.hpp"
#include "chaofuzz/phase2.hpp"

namespace chaofuzz {

struct RunConfig {
    chaos::MapParams map;
    phase2::Phase2Config phase2;

    void validate() const;
};

struct EncryptResult {
    imgio::CipherContainer container;
    DecryptionKey key;
    phase2::Phase2Outcome outcome;

    /// Unpadded cipher pixels, for metrics.
    GrayImage cipher_image() const;
    GrayImage companion_image() const;
};

/// The plaintext with the least-significant bit of pixel (0,0) flipped.
GrayImage companion_of(const GrayImage& img);

/// SHA-512 of the row-major pixel bytes.
Digest512 image_hash(const GrayImage& img);

/// Appends zero bytes up to the next multiple of `block`.
Bytes pad_to_block(std::span<const std::uint8_t> data, std::size_t block);

EncryptResult encrypt(const GrayImage& img, const MasterKey& master, const RunConfig& config = {});

/// Uses only the key record and the chaotic parameters: no fuzzy inference.
GrayImage decrypt(const imgio::CipherContainer& container, const DecryptionKey& key,
                  const chaos::MapParams& params = {});

}  // namespace chaofuzz
