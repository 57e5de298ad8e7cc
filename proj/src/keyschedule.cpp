#include "chaofuzz/keyschedule.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "chaofuzz/error.hpp"

namespace chaofuzz {

double fraction_from_128(std::span<const std::uint8_t, 16> bytes) noexcept {
    unsigned __int128 value = 0;
    for (auto b : bytes) value = (value << 8) | b;
    if (value == 0) return 0.0;

    const auto high = static_cast<std::uint64_t>(value >> 64);
    const auto low = static_cast<std::uint64_t>(value);
    const int bit_length = high ? 128 - std::countl_zero(high) : 64 - std::countl_zero(low);
    int exponent = -128;
    if (bit_length > 53) {
        value >>= bit_length - 53;
        exponent += bit_length - 53;
    }
    return std::ldexp(static_cast<double>(static_cast<std::uint64_t>(value)), exponent);
}

DerivedSeeds derive_seeds(const MasterKey& master) {
    const Digest512 k512 = sha512(master.bytes);
    const std::span<const std::uint8_t, 64> digest(k512);

    DerivedSeeds seeds;
    seeds.x0 = fraction_from_128(digest.subspan<0, 16>());
    seeds.x1 = fraction_from_128(digest.subspan<16, 16>());
    seeds.x2 = fraction_from_128(digest.subspan<32, 16>());
    std::copy_n(k512.begin() + 48, 16, seeds.phase2_key.begin());
    seeds.x_aes = fraction_from_128(digest.subspan<48, 16>());
    return seeds;
}

Bytes pack_decryption_key(const DecryptionKey& key) {
    if (key.xor_count > 15) {
        throw Error(ErrorCode::InvalidArgument,
                    "xor_count must fit in 4 bits, got " + std::to_string(key.xor_count));
    }
    Bytes blob;
    blob.reserve(kKeyFileBytes);
    blob.push_back(kKeyFileVersion);
    blob.insert(blob.end(), key.master.bytes.begin(), key.master.bytes.end());
    blob.insert(blob.end(), key.image_hash.begin(), key.image_hash.end());
    blob.push_back(static_cast<std::uint8_t>((key.aes_flag ? 0x80 : 0x00) | (key.xor_count << 3)));
    return blob;
}

DecryptionKey unpack_decryption_key(std::span<const std::uint8_t> blob) {
    if (blob.size() != kKeyFileBytes) {
        throw Error(ErrorCode::WrongLength, "decryption key must be " +
                                                std::to_string(kKeyFileBytes) + " bytes, got " +
                                                std::to_string(blob.size()));
    }
    if (blob[0] != kKeyFileVersion) {
        throw Error(ErrorCode::UnknownVersion,
                    "unsupported key file version " + std::to_string(blob[0]));
    }
    const std::uint8_t tail = blob[129];
    if ((tail & 0x07) != 0) throw Error(ErrorCode::NonzeroPadding, "key file padding bits are set");

    DecryptionKey key;
    std::copy_n(blob.begin() + 1, 64, key.master.bytes.begin());
    std::copy_n(blob.begin() + 65, 64, key.image_hash.begin());
    key.aes_flag = (tail & 0x80) != 0;
    key.xor_count = static_cast<std::uint8_t>((tail >> 3) & 0x0F);
    return key;
}

}  // namespace chaofuzz
