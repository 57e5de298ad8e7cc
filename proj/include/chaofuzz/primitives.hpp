#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace chaofuzz {

using Digest512 = std::array<std::uint8_t, 64>;
using AesBlock = std::array<std::uint8_t, 16>;
using AesKey128 = std::array<std::uint8_t, 16>;

/// FIPS 180-4 SHA-512.
Digest512 sha512(std::span<const std::uint8_t> message);

/// Incremental SHA-512 for inputs that arrive in pieces. Produces the same
/// digest as the one-shot call regardless of how the input is chunked.
class Sha512 {
public:
    Sha512();
    void update(std::span<const std::uint8_t> data);
    Digest512 finish();

private:
    void compress(const std::uint8_t* block);

    std::array<std::uint64_t, 8> state_;
    std::array<std::uint8_t, 128> buffer_{};
    std::size_t buffered_ = 0;
    std::uint64_t total_bytes_ = 0;
};

/// FIPS 197 AES-128, single block, 10 rounds.
AesBlock aes128_encrypt_block(const AesBlock& block, const AesKey128& key);
AesBlock aes128_decrypt_block(const AesBlock& block, const AesKey128& key);

}  // namespace chaofuzz
