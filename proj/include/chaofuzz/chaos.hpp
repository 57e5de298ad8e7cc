#pragma once

// Tent-map pseudo-random source. Every randomized decision of the cipher
// (keystreams, permutations, crossover partners) is drawn from here, so the
// arithmetic is kept fully deterministic: IEEE-754 doubles and a fixed
// evaluation order.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "chaofuzz/image.hpp"

namespace chaofuzz::chaos {

inline constexpr double kDefaultMu = 1.9999;
inline constexpr std::size_t kDefaultBurnIn = 1000;

/// Map parameter and transient length shared by every stream of one run.
struct MapParams {
    double mu = kDefaultMu;
    std::size_t burn_in = kDefaultBurnIn;
};

/// Map value plus the number of steps taken so far. The step count only
/// feeds the degeneracy guard.
struct TentMapState {
    double x = 0.5;
    double mu = kDefaultMu;
    std::uint64_t iteration = 0;

    friend bool operator==(const TentMapState&, const TentMapState&) = default;
};

struct Permutation {
    std::vector<std::size_t> indices;

    std::size_t size() const noexcept { return indices.size(); }
    bool is_bijection() const;
    Permutation inverse() const;
};

/// One application of x -> mu*x (x < 1/2) or mu*(1-x) (x >= 1/2). Results
/// outside (0,1) are replaced by 0.400000000000001 + (iteration mod 7)e-15.
TentMapState step(TentMapState state) noexcept;

/// Fresh stream from a seed: validates mu in (0,2] and discards `burn_in`
/// iterations.
TentMapState seed(double x0, double mu, std::size_t burn_in = kDefaultBurnIn);
inline TentMapState seed(double x0, const MapParams& params) {
    return seed(x0, params.mu, params.burn_in);
}

/// floor(x * 10^14) with the product rounded once to double.
std::uint64_t quantize(double x) noexcept;

std::pair<Bytes, TentMapState> keystream_bytes(TentMapState state, std::size_t n);

/// Generates n map values and returns their stable ascending argsort.
std::pair<Permutation, TentMapState> sort_index_permutation(TentMapState state, std::size_t n);

/// One step, then quantize(x) mod modulus.
std::pair<std::size_t, TentMapState> index_draw(TentMapState state, std::size_t modulus);

}  // namespace chaofuzz::chaos
