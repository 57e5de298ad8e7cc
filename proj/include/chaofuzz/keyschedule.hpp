#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

#include "chaofuzz/image.hpp"
#include "chaofuzz/primitives.hpp"

namespace chaofuzz {

struct MasterKey {
    std::array<std::uint8_t, 64> bytes{};
    friend bool operator==(const MasterKey&, const MasterKey&) = default;
};

/// Chaotic seeds and the phase-2 AES key, all sliced from SHA-512(master).
struct DerivedSeeds {
    double x0 = 0.0;  // keystream XOR
    double x1 = 0.0;  // pixel shuffle
    double x2 = 0.0;  // genetic crossover
    AesKey128 phase2_key{};
    double x_aes = 0.0;

    friend bool operator==(const DerivedSeeds&, const DerivedSeeds&) = default;
};

/// The secret needed to decrypt: master key, plain-image hash, the AES-Chaos
/// flag and the number of XOR-by-hash rounds (1029 bits of payload).
struct DecryptionKey {
    MasterKey master;
    Digest512 image_hash{};
    bool aes_flag = false;
    std::uint8_t xor_count = 0;

    friend bool operator==(const DecryptionKey&, const DecryptionKey&) = default;
};

inline constexpr std::uint8_t kKeyFileVersion = 0x01;
inline constexpr std::size_t kKeyFileBytes = 130;
inline constexpr std::size_t kDecryptionKeyPayloadBits = 512 + 512 + 1 + 4;

/// Interprets 16 bytes as a big-endian 128-bit integer and divides by 2^128.
/// The integer is truncated (not rounded) to 53 significant bits, so the
/// result is always in [0,1).
double fraction_from_128(std::span<const std::uint8_t, 16> bytes) noexcept;

DerivedSeeds derive_seeds(const MasterKey& master);

Bytes pack_decryption_key(const DecryptionKey& key);
DecryptionKey unpack_decryption_key(std::span<const std::uint8_t> blob);

/// log2 of the key space: 2^1029 key bits times 10^14 map precision ~ 2^1075.
constexpr std::size_t key_space_bits() noexcept { return 1075; }

}  // namespace chaofuzz
