#include <bit>
#include <cmath>
#include <random>

#include "chaofuzz/error.hpp"
#include "chaofuzz/keyschedule.hpp"
#include "doctest.h"

using namespace chaofuzz;

namespace {
MasterKey random_master(std::mt19937_64& rng) {
    MasterKey m;
    for (auto& b : m.bytes) b = static_cast<std::uint8_t>(rng());
    return m;
}

DecryptionKey random_key(std::mt19937_64& rng) {
    DecryptionKey k;
    k.master = random_master(rng);
    for (auto& b : k.image_hash) b = static_cast<std::uint8_t>(rng());
    k.aes_flag = rng() & 1;
    k.xor_count = static_cast<std::uint8_t>(rng() % 16);
    return k;
}
}  // namespace

TEST_SUITE("keyschedule") {

TEST_CASE("seeds of the all-zero master key") {
    const auto seeds = derive_seeds(MasterKey{});
    // SHA-512(0^64) starts 7be9fda48f4179e611c698a73cff09fa; values computed
    // with Python big integers, truncated to 53 bits.
    CHECK(seeds.x0 == 0.48403916614120657);
    CHECK(seeds.x1 == 0.9654603756780449);
    CHECK(seeds.x2 == 0.3134682875775592);
    CHECK(seeds.x_aes == 0.02713338713053806);
    const auto digest = sha512(MasterKey{}.bytes);
    CHECK(std::equal(seeds.phase2_key.begin(), seeds.phase2_key.end(), digest.begin() + 48));
}

TEST_CASE("fraction_from_128 edge values") {
    std::array<std::uint8_t, 16> zero{};
    CHECK(fraction_from_128(zero) == 0.0);
    std::array<std::uint8_t, 16> ones{};
    ones.fill(0xFF);
    CHECK(fraction_from_128(ones) < 1.0);
    CHECK(fraction_from_128(ones) == 1.0 - std::ldexp(1.0, -53));
    std::array<std::uint8_t, 16> half{};
    half[0] = 0x80;
    CHECK(fraction_from_128(half) == 0.5);
    std::array<std::uint8_t, 16> tiny{};
    tiny[15] = 1;
    CHECK(fraction_from_128(tiny) == std::ldexp(1.0, -128));
}

TEST_CASE("seeds lie in [0,1), are deterministic and sensitive to every key bit") {
    std::mt19937_64 rng(31);
    int all_changed = 0;
    for (int trial = 0; trial < 100; ++trial) {
        MasterKey m = random_master(rng);
        const auto s = derive_seeds(m);
        CHECK(derive_seeds(m) == s);
        for (double x : {s.x0, s.x1, s.x2, s.x_aes}) {
            CHECK(x >= 0.0);
            CHECK(x < 1.0);
        }
        m.bytes[rng() % 64] ^= static_cast<std::uint8_t>(1u << (rng() % 8));
        const auto t = derive_seeds(m);
        all_changed += (s.x0 != t.x0 && s.x1 != t.x1 && s.x2 != t.x2 && s.x_aes != t.x_aes) ? 1 : 0;
    }
    CHECK(all_changed == 100);
}

TEST_CASE("decryption key layout") {
    DecryptionKey k;
    k.master.bytes.fill(0xAA);
    k.image_hash.fill(0x55);
    k.aes_flag = true;
    k.xor_count = 15;
    const Bytes blob = pack_decryption_key(k);
    REQUIRE(blob.size() == kKeyFileBytes);
    CHECK(blob[0] == 0x01);
    CHECK(blob[1] == 0xAA);
    CHECK(blob[64] == 0xAA);
    CHECK(blob[65] == 0x55);
    CHECK(blob[128] == 0x55);
    // flag=1, count=1111, pad=000
    CHECK(blob[129] == 0b1111'1000);
    k.aes_flag = false;
    k.xor_count = 5;
    CHECK(pack_decryption_key(k)[129] == 0b0010'1000);
    CHECK(kDecryptionKeyPayloadBits == 1029);
    CHECK(8 * (kKeyFileBytes - 1) - 3 == kDecryptionKeyPayloadBits);

    k.xor_count = 16;
    CHECK_THROWS_AS(pack_decryption_key(k), Error);
}

TEST_CASE("decryption key codec round trip") {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 1000; ++i) {
        const auto k = random_key(rng);
        const Bytes blob = pack_decryption_key(k);
        REQUIRE(blob.size() == 130);
        REQUIRE(unpack_decryption_key(blob) == k);
        REQUIRE(pack_decryption_key(unpack_decryption_key(blob)) == blob);
    }
}

TEST_CASE("decryption key parse errors") {
    Bytes zero(130, 0);
    zero[0] = kKeyFileVersion;
    const auto k = unpack_decryption_key(zero);
    CHECK(k == DecryptionKey{});

    auto code_of = [](const Bytes& b) {
        try {
            unpack_decryption_key(b);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidArgument;
    };
    CHECK(code_of(Bytes(129, 0)) == ErrorCode::WrongLength);
    CHECK(code_of(Bytes(131, 0)) == ErrorCode::WrongLength);
    Bytes bad_version = zero;
    bad_version[0] = 2;
    CHECK(code_of(bad_version) == ErrorCode::UnknownVersion);
    Bytes bad_pad = zero;
    bad_pad[129] = 0x01;
    CHECK(code_of(bad_pad) == ErrorCode::NonzeroPadding);
}

TEST_CASE("key space") {
    CHECK(key_space_bits() == 1075);
    CHECK(key_space_bits() == 1029 + static_cast<std::size_t>(std::floor(14 * std::log2(10.0))));
}

}
