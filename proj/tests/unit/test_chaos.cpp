#include <algorithm>
#include <numeric>
#include <random>

#include "chaofuzz/chaos.hpp"
#include "chaofuzz/error.hpp"
#include "doctest.h"

using namespace chaofuzz;
using namespace chaofuzz::chaos;

TEST_SUITE("chaos") {

TEST_CASE("step follows both branches of the tent map") {
    CHECK(step({0.4, 1.9, 0}).x == doctest::Approx(0.76).epsilon(1e-15));
    CHECK(step({0.76, 1.9, 0}).x == doctest::Approx(0.456).epsilon(1e-15));
    // x = 1/2 takes the mu*(1-x) branch.
    CHECK(step({0.5, 1.9, 0}).x == doctest::Approx(0.95).epsilon(1e-15));
    CHECK(step({0.4, 1.9, 0}).iteration == 1);
}

TEST_CASE("degenerate results are replaced deterministically") {
    // mu = 2 and x = 0.5 lands exactly on 1.0.
    const auto s = step({0.5, 2.0, 6});
    CHECK(s.iteration == 7);
    CHECK(s.x == 0.400000000000001);
    const auto t = step({0.5, 2.0, 9});
    CHECK(t.x == 0.400000000000001 + 3 * 1e-15);
    // A zero seed collapses to 0 and is rescued the same way.
    const auto z = step({0.0, 1.9999, 0});
    CHECK(z.x > 0.0);
    CHECK(z.x < 1.0);
}

TEST_CASE("seed validates mu and applies burn-in") {
    CHECK_THROWS_AS(seed(0.3, 0.0, 0), Error);
    CHECK_THROWS_AS(seed(0.3, 2.5, 0), Error);
    auto manual = TentMapState{0.3, 1.9999, 0};
    for (int i = 0; i < 1000; ++i) manual = step(manual);
    CHECK(seed(0.3, 1.9999) == manual);
    CHECK(seed(0.3, MapParams{1.9999, 0}).x == 0.3);
}

TEST_CASE("quantize and keystream bytes") {
    CHECK(quantize(0.5) % 256 == 0);
    // 0.12345678901 * 1e14 rounds to 12345678901000 = 48225308207*256 + 8.
    CHECK(quantize(0.12345678901) % 256 == 8);

    // mu = 1 makes 0.5 a fixed point: every byte is 0.
    const auto [zeros, s0] = keystream_bytes({0.5, 1.0, 0}, 32);
    CHECK(std::all_of(zeros.begin(), zeros.end(), [](auto b) { return b == 0; }));

    const auto a = keystream_bytes(seed(0.4, 1.9999), 64);
    const auto b = keystream_bytes(seed(0.4, 1.9999), 64);
    CHECK(a.first == b.first);
    CHECK(a.second == b.second);
    // Frozen from an IEEE-double re-implementation.
    CHECK(Bytes(a.first.begin(), a.first.begin() + 4) == Bytes{130, 9, 216, 143});
}

TEST_CASE("sort_index_permutation") {
    CHECK(sort_index_permutation({0.3, 1.9, 0}, 1).first.indices == std::vector<std::size_t>{0});
    // Values 0.76, 0.456, 0.8664, 0.25384.
    const auto [perm, state] = sort_index_permutation({0.4, 1.9, 0}, 4);
    CHECK(perm.indices == std::vector<std::size_t>{3, 1, 0, 2});
    CHECK(state.iteration == 4);

    // Equal values keep their original order: mu = 1 pins x at 0.5.
    const auto [flat, s2] = sort_index_permutation({0.5, 1.0, 0}, 5);
    CHECK(flat.indices == std::vector<std::size_t>{0, 1, 2, 3, 4});
}

TEST_CASE("sort_index_permutation is a bijection for n in 1..4096") {
    auto state = seed(0.123, 1.9999);
    for (std::size_t n = 1; n <= 4096; n += (n < 64 ? 1 : 37)) {
        auto [perm, next] = sort_index_permutation(state, n);
        REQUIRE(perm.is_bijection());
        const auto inv = perm.inverse();
        for (std::size_t k = 0; k < n; ++k) REQUIRE(inv.indices[perm.indices[k]] == k);
        state = next;
    }
    CHECK(sort_index_permutation(state, 4096).first.is_bijection());
}

TEST_CASE("index_draw") {
    CHECK_THROWS_AS(index_draw({0.3, 1.9, 0}, 0), Error);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.01, 0.99);
    for (int i = 0; i < 100; ++i) CHECK(index_draw({unit(rng), 1.9999, 0}, 1).first == 0);
    // One step from x0 = 0.25 with mu = 2 lands on 0.5.
    CHECK(index_draw({0.25, 2.0, 0}, 256).first == 0);
    // mu = 1 maps 0.12345678901 to itself.
    CHECK(index_draw({0.12345678901, 1.0, 0}, 256).first == 8);
}

TEST_CASE("nearby seeds diverge") {
    const double x0 = 0.3;
    const auto a = keystream_bytes({x0, 1.9, 0}, 1000).first;
    const auto b = keystream_bytes({x0 + std::ldexp(1.0, -40), 1.9, 0}, 1000).first;
    std::size_t differ = 0;
    for (std::size_t i = 0; i < a.size(); ++i) differ += a[i] != b[i];
    CHECK(differ >= 900);
}

TEST_CASE("continuing a state equals one long run") {
    for (double x : {0.1, 0.37, 0.61, 0.93}) {
        TentMapState s{x, 1.9999, 0};
        TentMapState half = s;
        for (int i = 0; i < 500; ++i) half = step(half);
        TentMapState whole = s;
        for (int i = 0; i < 1000; ++i) whole = step(whole);
        TentMapState resumed = half;
        for (int i = 0; i < 500; ++i) resumed = step(resumed);
        CHECK(resumed == whole);

        const auto split1 = keystream_bytes(s, 300);
        const auto split2 = keystream_bytes(split1.second, 200);
        auto joined = split1.first;
        joined.insert(joined.end(), split2.first.begin(), split2.first.end());
        CHECK(joined == keystream_bytes(s, 500).first);
    }
}

TEST_CASE("states stay inside (0,1) over long runs") {
    auto s = seed(0.777, 1.9999, 0);
    for (int i = 0; i < 200000; ++i) {
        s = step(s);
        REQUIRE(s.x > 0.0);
        REQUIRE(s.x < 1.0);
    }
}

}
