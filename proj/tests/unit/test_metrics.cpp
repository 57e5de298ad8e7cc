#include <omp.h>

#include <cmath>
#include <random>

#include "chaofuzz/error.hpp"
#include "chaofuzz/metrics.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace chaofuzz;
using namespace chaofuzz::metrics;

namespace {

GrayImage random_image(std::size_t w, std::size_t h, std::mt19937_64& rng) {
    Bytes px(w * h);
    for (auto& p : px) p = static_cast<std::uint8_t>(rng());
    return GrayImage(w, h, std::move(px));
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("entropy extremes") {
    const GrayImage flat(16, 16, Bytes(256, 9));
    CHECK(entropy(flat) == 0.0);
    Bytes all(256);
    for (std::size_t i = 0; i < 256; ++i) all[i] = static_cast<std::uint8_t>(i);
    CHECK(entropy(GrayImage(16, 16, all)) == doctest::Approx(8.0).epsilon(1e-12));
    const GrayImage half(2, 2, {0, 0, 255, 255});
    CHECK(entropy(half) == doctest::Approx(1.0));
}

TEST_CASE("histogram counts") {
    const GrayImage img(2, 2, {3, 3, 7, 255});
    const auto h = histogram(img);
    CHECK(h[3] == 2);
    CHECK(h[7] == 1);
    CHECK(h[255] == 1);
    CHECK(histogram_to_csv(h).size() > 256);
}

TEST_CASE("correlation of ramps") {
    GrayImage ramp(16, 16);
    for (std::size_t r = 0; r < 16; ++r)
        for (std::size_t c = 0; c < 16; ++c) ramp.at(r, c) = static_cast<std::uint8_t>(r * 16 + c);
    CHECK(correlation(ramp, Direction::Horizontal) == doctest::Approx(1.0));
    CHECK(correlation(ramp, Direction::Vertical) == doctest::Approx(1.0));
    CHECK(correlation(ramp, Direction::Diagonal) == doctest::Approx(1.0));

    GrayImage checker(16, 16);
    for (std::size_t r = 0; r < 16; ++r)
        for (std::size_t c = 0; c < 16; ++c) checker.at(r, c) = ((r + c) % 2) ? 200 : 10;
    CHECK(correlation(checker, Direction::Horizontal) == doctest::Approx(-1.0));
    CHECK(correlation(checker, Direction::Vertical) == doctest::Approx(-1.0));
    // Diagonal neighbours share a colour.
    CHECK(correlation(checker, Direction::Diagonal) == doctest::Approx(1.0));
}

TEST_CASE("degenerate variance") {
    const GrayImage flat(8, 8, Bytes(64, 1));
    try {
        correlation(flat, Direction::Horizontal);
        FAIL("expected DegenerateVariance");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateVariance);
    }
    const auto report = build_report(flat);
    for (const auto& c : report.correlations) {
        CHECK_FALSE(c.value.has_value());
        CHECK_FALSE(c.unavailable_reason.empty());
    }
}

TEST_CASE("npcr and uaci") {
    const GrayImage a(2, 2, {0, 0, 0, 0});
    const GrayImage b(2, 2, {255, 255, 255, 255});
    CHECK(npcr(a, a) == 0.0);
    CHECK(uaci(a, a) == 0.0);
    CHECK(npcr(a, b) == 100.0);
    CHECK(uaci(a, b) == 100.0);
    const GrayImage c(2, 2, {0, 51, 0, 0});
    CHECK(npcr(a, c) == 25.0);
    CHECK(uaci(a, c) == doctest::Approx(5.0));
    try {
        npcr(a, GrayImage(4, 2));
        FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
}

TEST_CASE("random images sit at the ideal values") {
    std::mt19937_64 rng(31);
    const auto a = random_image(512, 512, rng);
    const auto b = random_image(512, 512, rng);
    CHECK(entropy(a) > 7.999);
    for (auto d : kDirections) CHECK(std::abs(correlation(a, d)) < 0.01);
    CHECK(npcr(a, b) == doctest::Approx(99.609).epsilon(0.002));
    CHECK(uaci(a, b) == doctest::Approx(33.464).epsilon(0.005));
}

TEST_CASE("parallel kernels match the serial reference") {
    std::mt19937_64 rng(37);
    for (std::size_t n : {2u, 3u, 17u, 256u, 601u}) {
        const auto a = random_image(n, n + 1, rng);
        const auto b = random_image(n, n + 1, rng);
        CHECK(histogram(a) == serial::histogram(a.pixels()));
        CHECK(entropy(a) == doctest::Approx(serial::entropy(a.pixels())).epsilon(1e-12));
        for (auto d : kDirections)
            CHECK(correlation(a, d) == doctest::Approx(serial::correlation(a, d)).epsilon(1e-9));
        CHECK(npcr(a, b) == doctest::Approx(serial::npcr(a.pixels(), b.pixels())).epsilon(1e-12));
        CHECK(uaci(a, b) == doctest::Approx(serial::uaci(a.pixels(), b.pixels())).epsilon(1e-12));
    }
}

TEST_CASE("results do not depend on the thread count") {
    std::mt19937_64 rng(39);
    const auto a = random_image(777, 333, rng);
    const auto b = random_image(777, 333, rng);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const double e1 = entropy(a), r1 = correlation(a, Direction::Diagonal), n1 = npcr(a, b), u1 = uaci(a, b);
    for (int t : {2, 3, 8}) {
        omp_set_num_threads(t);
        CHECK(entropy(a) == e1);
        CHECK(correlation(a, Direction::Diagonal) == r1);
        CHECK(npcr(a, b) == n1);
        CHECK(uaci(a, b) == u1);
    }
    omp_set_num_threads(saved);
}

TEST_CASE("report serialisation") {
    std::mt19937_64 rng(41);
    const auto a = random_image(32, 32, rng);
    const auto b = random_image(32, 32, rng);
    const auto rep = build_report(a, &b);
    REQUIRE(rep.npcr.has_value());
    const auto text = report_to_text(rep);
    CHECK(text.find("entropy ") != std::string::npos);
    CHECK(text.find("npcr ") != std::string::npos);
    const auto j = nlohmann::json::parse(report_to_json(rep));
    CHECK(j["width"] == 32);
    CHECK(j["entropy"].get<double>() == doctest::Approx(rep.entropy));
    CHECK(j["histogram"].size() == 256);
    CHECK(j["uaci"].get<double>() == doctest::Approx(*rep.uaci));
    CHECK_THROWS_AS(build_report(a, nullptr).npcr.value(), std::bad_optional_access);
    const GrayImage other(16, 64);
    CHECK_THROWS_AS(build_report(a, &other), Error);
}

}
