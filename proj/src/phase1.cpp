#include "chaofuzz/phase1.hpp"

#include <tuple>

#include "chaofuzz/error.hpp"

namespace chaofuzz::phase1 {

GrayImage xor_keystream(const GrayImage& img, double seed, const MapParams& params) {
    const auto [stream, state] = chaos::keystream_bytes(chaos::seed(seed, params), img.size());
    GrayImage out = img;
    auto px = out.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) px[i] ^= stream[i];
    return out;
}

GrayImage shuffle(const GrayImage& img, double seed, const MapParams& params) {
    const auto [perm, state] = chaos::sort_index_permutation(chaos::seed(seed, params), img.size());
    GrayImage out(img.width(), img.height());
    const auto src = img.pixels();
    auto dst = out.pixels();
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = src[perm.indices[k]];
    return out;
}

GrayImage unshuffle(const GrayImage& img, double seed, const MapParams& params) {
    const auto [perm, state] = chaos::sort_index_permutation(chaos::seed(seed, params), img.size());
    GrayImage out(img.width(), img.height());
    const auto src = img.pixels();
    auto dst = out.pixels();
    for (std::size_t k = 0; k < src.size(); ++k) dst[perm.indices[k]] = src[k];
    return out;
}

std::pair<std::uint8_t, std::uint8_t> crossover_pixels(std::uint8_t a, std::uint8_t b, unsigned k) {
    if (k < 1 || k > 7) throw Error(ErrorCode::InvalidArgument, "crossover point must be in 1..7");
    const auto low = static_cast<std::uint8_t>((1u << k) - 1u);
    const auto high = static_cast<std::uint8_t>(~low);
    return {static_cast<std::uint8_t>((a & high) | (b & low)),
            static_cast<std::uint8_t>((b & high) | (a & low))};
}

std::vector<CrossoverStep> crossover_trace(std::size_t n, double seed, const MapParams& params) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "crossover needs at least two pixels");
    std::vector<CrossoverStep> trace;
    trace.reserve(n);
    auto state = chaos::seed(seed, params);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t partner = i;
        while (partner == i) std::tie(partner, state) = chaos::index_draw(state, n);
        std::size_t point = 0;
        std::tie(point, state) = chaos::index_draw(state, 7);
        trace.push_back({i, partner, static_cast<unsigned>(point) + 1});
    }
    return trace;
}

namespace {
void apply_step(std::span<std::uint8_t> px, const CrossoverStep& s) {
    std::tie(px[s.first], px[s.partner]) = crossover_pixels(px[s.first], px[s.partner], s.bits);
}
}  // namespace

GrayImage crossover_diffuse(const GrayImage& img, double seed, const MapParams& params) {
    GrayImage out = img;
    auto px = out.pixels();
    for (const auto& s : crossover_trace(px.size(), seed, params)) apply_step(px, s);
    return out;
}

GrayImage crossover_undiffuse(const GrayImage& img, double seed, const MapParams& params) {
    GrayImage out = img;
    auto px = out.pixels();
    const auto trace = crossover_trace(px.size(), seed, params);
    for (auto it = trace.rbegin(); it != trace.rend(); ++it) apply_step(px, *it);
    return out;
}

GrayImage phase1_encrypt(const GrayImage& img, const DerivedSeeds& seeds, const MapParams& params) {
    return crossover_diffuse(shuffle(xor_keystream(img, seeds.x0, params), seeds.x1, params),
                             seeds.x2, params);
}

GrayImage phase1_decrypt(const GrayImage& img, const DerivedSeeds& seeds, const MapParams& params) {
    return xor_keystream(unshuffle(crossover_undiffuse(img, seeds.x2, params), seeds.x1, params),
                         seeds.x0, params);
}

}  // namespace chaofuzz::phase1
