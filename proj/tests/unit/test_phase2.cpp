#include <algorithm>
#include <random>
#include <set>

#include "chaofuzz/error.hpp"
#include "chaofuzz/metrics.hpp"
#include "chaofuzz/phase1.hpp"
#include "chaofuzz/phase2.hpp"
#include "chaofuzz/pipeline.hpp"
#include "doctest.h"

using namespace chaofuzz;
using namespace chaofuzz::phase2;

namespace {

Bytes random_bytes(std::size_t n, std::mt19937_64& rng) {
    Bytes b(n);
    for (auto& v : b) v = static_cast<std::uint8_t>(rng());
    return b;
}

AesKey128 random_key(std::mt19937_64& rng) {
    AesKey128 k{};
    for (auto& v : k) v = static_cast<std::uint8_t>(rng());
    return k;
}

MasterKey random_master(std::mt19937_64& rng) {
    MasterKey m;
    for (auto& v : m.bytes) v = static_cast<std::uint8_t>(rng());
    return m;
}

struct Prepared {
    Bytes pre, companion;
    Digest512 hash, companion_hash;
    DerivedSeeds seeds;
};

Prepared prepare(const GrayImage& img, const MasterKey& m) {
    Prepared p;
    p.seeds = derive_seeds(m);
    const auto twin = companion_of(img);
    p.pre = pad_to_block(phase1::phase1_encrypt(img, p.seeds).pixels(), kHashBlockBytes);
    p.companion = pad_to_block(phase1::phase1_encrypt(twin, p.seeds).pixels(), kHashBlockBytes);
    p.hash = image_hash(img);
    p.companion_hash = image_hash(twin);
    return p;
}

GrayImage gradient(std::size_t n, unsigned salt) {
    GrayImage img(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) img.at(r, c) = static_cast<std::uint8_t>(r * salt + c);
    }
    return img;
}

}  // namespace

TEST_SUITE("phase2") {

TEST_CASE("aes-chaos round trip") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        const auto data = random_bytes(64 * 64, rng);
        const auto key = random_key(rng);
        const double x = 0.01 + 0.049 * i;
        REQUIRE(aes_chaos_decrypt(aes_chaos_encrypt(data, key, x), key, x) == data);
    }
}

TEST_CASE("aes-chaos single block is AES of the whitened block") {
    std::mt19937_64 rng(5);
    const auto data = random_bytes(16, rng);
    const auto key = random_key(rng);
    const double x = 0.3141;
    auto state = chaos::sort_index_permutation(chaos::seed(x, chaos::MapParams{}), 1).second;
    const auto whitening = chaos::keystream_bytes(state, 16).first;
    AesBlock block{};
    for (std::size_t i = 0; i < 16; ++i) block[i] = data[i] ^ whitening[i];
    const auto expected = aes128_encrypt_block(block, key);
    const auto got = aes_chaos_encrypt(data, key, x);
    CHECK(std::equal(got.begin(), got.end(), expected.begin()));
}

TEST_CASE("aes-chaos breaks up uniform input") {
    const Bytes data(64 * 64, 128);
    const auto c = aes_chaos_encrypt(data, AesKey128{}, 0.2718);
    std::set<Bytes> blocks;
    for (std::size_t i = 0; i < c.size(); i += 16) blocks.emplace(c.begin() + i, c.begin() + i + 16);
    CHECK(blocks.size() == c.size() / 16);
    CHECK(metrics::entropy(c) > 7.9);
}

TEST_CASE("aes-chaos wrong key or seed") {
    std::mt19937_64 rng(9);
    const auto data = random_bytes(64 * 64, rng);
    const auto key = random_key(rng);
    const auto c = aes_chaos_encrypt(data, key, 0.45);

    // Later blocks are keyed by the previous ciphertext block, which is
    // public, so the AES key alone only guards the first block in the walk.
    auto other = key;
    other[0] ^= 1;
    const auto first = chaos::sort_index_permutation(chaos::seed(0.45, chaos::MapParams{}), c.size() / 16).first.indices[0];
    const auto wrong = aes_chaos_decrypt(c, other, 0.45);
    std::size_t bad_blocks = 0;
    for (std::size_t b = 0; b < c.size() / 16; ++b) {
        if (!std::equal(wrong.begin() + b * 16, wrong.begin() + b * 16 + 16, data.begin() + b * 16)) ++bad_blocks;
    }
    CHECK(bad_blocks == 1);
    CHECK_FALSE(std::equal(wrong.begin() + first * 16, wrong.begin() + first * 16 + 16, data.begin() + first * 16));

    // The chaotic seed drives order and whitening of every block.
    CHECK(metrics::npcr(aes_chaos_decrypt(c, key, 0.45 + 1e-9), data) >= 99.0);
}

TEST_CASE("aes-chaos alignment") {
    const Bytes odd(17, 0);
    CHECK_THROWS_AS(aes_chaos_encrypt(odd, AesKey128{}, 0.3), Error);
    CHECK_THROWS_AS(aes_chaos_decrypt(Bytes{}, AesKey128{}, 0.3), Error);
}

TEST_CASE("xor by hash") {
    Digest512 zero{};
    Bytes data(128);
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = static_cast<std::uint8_t>(i);
    // With a zero hash the first block passes through and the second is the
    // byte-wise XOR of both.
    const auto c = xor_by_hash(data, zero);
    for (std::size_t i = 0; i < 64; ++i) {
        CHECK(c[i] == data[i]);
        CHECK(c[64 + i] == (data[i] ^ data[64 + i]));
    }

    std::mt19937_64 rng(15);
    Digest512 h{};
    for (auto& v : h) v = static_cast<std::uint8_t>(rng());
    const auto plain = random_bytes(64 * 40, rng);
    for (int k = 0; k <= 15; ++k) {
        Bytes x = plain;
        for (int i = 0; i < k; ++i) x = xor_by_hash(x, h);
        for (int i = 0; i < k; ++i) x = xor_by_hash_inverse(x, h);
        REQUIRE(x == plain);
    }

    try {
        xor_by_hash(Bytes(100), h);
        FAIL("expected BlockAlignment");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BlockAlignment);
    }
}

TEST_CASE("controller at SEC 0 stays light") {
    std::mt19937_64 rng(21);
    const auto p = prepare(gradient(64, 3), random_master(rng));
    Phase2Config cfg;
    cfg.sec = 0;
    const auto out = run_phase2(p.pre, p.companion, p.seeds, p.hash, p.companion_hash, cfg);
    CHECK_FALSE(out.aes_flag);
    CHECK(out.xor_count == 0);
    CHECK(out.d_dive_history.size() == 1);
    CHECK(out.cipher == p.pre);
}

TEST_CASE("controller is deterministic and bounded") {
    std::mt19937_64 rng(23);
    const auto m = random_master(rng);
    for (unsigned salt : {1u, 5u, 9u, 13u, 17u}) {
        const auto p = prepare(gradient(64, salt), m);
        std::uint8_t previous = 0;
        for (double sec = 0; sec <= 100; sec += 10) {
            Phase2Config cfg;
            cfg.sec = sec;
            const auto a = run_phase2(p.pre, p.companion, p.seeds, p.hash, p.companion_hash, cfg);
            const auto b = run_phase2(p.pre, p.companion, p.seeds, p.hash, p.companion_hash, cfg);
            REQUIRE(a.cipher == b.cipher);
            REQUIRE(a.xor_count == b.xor_count);
            REQUIRE(a.xor_count <= kMaxXorRounds);
            REQUIRE(a.d_dive_history.size() == a.xor_count + 1u);
            CHECK(a.xor_count >= previous);
            previous = a.xor_count;
        }
    }
}

TEST_CASE("controller stops at the configured cap") {
    std::mt19937_64 rng(29);
    const auto p = prepare(gradient(64, 7), random_master(rng));
    Phase2Config cfg;
    cfg.sec = 100;
    cfg.t1 = 0.0;  // AES off
    cfg.t2 = 1.0;  // never satisfied
    cfg.max_xor_rounds = 4;
    const auto out = run_phase2(p.pre, p.companion, p.seeds, p.hash, p.companion_hash, cfg);
    CHECK(out.xor_count == 4);
    CHECK_FALSE(out.aes_flag);
    Bytes x = out.cipher;
    for (int i = 0; i < 4; ++i) x = xor_by_hash_inverse(x, p.hash);
    CHECK(x == p.pre);
}

TEST_CASE("config validation") {
    Phase2Config cfg;
    cfg.t1 = 1.5;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.sec = -1;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.max_xor_rounds = 16;
    CHECK_THROWS_AS(cfg.validate(), Error);
}

}
