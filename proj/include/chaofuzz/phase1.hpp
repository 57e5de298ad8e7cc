#pragma once

// First encryption phase: keystream XOR, whole-image pixel shuffle and
// chaos-driven single-point crossover between pixel pairs. Each stage is a
// bijection for fixed seeds and has an exact inverse here.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "chaofuzz/chaos.hpp"
#include "chaofuzz/image.hpp"
#include "chaofuzz/keyschedule.hpp"

namespace chaofuzz::phase1 {

using chaos::MapParams;

/// XOR pixel i (row-major) with keystream byte i. Involution.
GrayImage xor_keystream(const GrayImage& img, double seed, const MapParams& params = {});

/// Output position k holds input position I[k], I = sort-index permutation.
GrayImage shuffle(const GrayImage& img, double seed, const MapParams& params = {});
GrayImage unshuffle(const GrayImage& img, double seed, const MapParams& params = {});

/// Exchange the k least-significant bits of a and b, k in 1..7.
std::pair<std::uint8_t, std::uint8_t> crossover_pixels(std::uint8_t a, std::uint8_t b, unsigned k);

struct CrossoverStep {
    std::size_t first;
    std::size_t partner;
    unsigned bits;
    friend bool operator==(const CrossoverStep&, const CrossoverStep&) = default;
};

/// The (i, j, k) sequence used by crossover_diffuse for n pixels: for each i
/// the partner draw (redrawn while equal to i) precedes the point draw.
std::vector<CrossoverStep> crossover_trace(std::size_t n, double seed, const MapParams& params = {});

GrayImage crossover_diffuse(const GrayImage& img, double seed, const MapParams& params = {});
GrayImage crossover_undiffuse(const GrayImage& img, double seed, const MapParams& params = {});

GrayImage phase1_encrypt(const GrayImage& img, const DerivedSeeds& seeds, const MapParams& params = {});
GrayImage phase1_decrypt(const GrayImage& img, const DerivedSeeds& seeds, const MapParams& params = {});

}  // namespace chaofuzz::phase1
