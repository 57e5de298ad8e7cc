#include "chaofuzz/chaos.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "chaofuzz/error.hpp"

namespace chaofuzz::chaos {

TentMapState step(TentMapState state) noexcept {
    const double x = state.x;
    double next = x < 0.5 ? state.mu * x : state.mu * (1.0 - x);
    ++state.iteration;
    if (!(next > 0.0 && next < 1.0)) {
        next = 0.400000000000001 + static_cast<double>(state.iteration % 7) * 1e-15;
    }
    state.x = next;
    return state;
}

TentMapState seed(double x0, double mu, std::size_t burn_in) {
    if (!(mu > 0.0 && mu <= 2.0)) {
        throw Error(ErrorCode::InvalidArgument, "tent map mu must lie in (0,2], got " +
                                                    std::to_string(mu));
    }
    TentMapState state{x0, mu, 0};
    for (std::size_t i = 0; i < burn_in; ++i) state = step(state);
    return state;
}

std::uint64_t quantize(double x) noexcept {
    // A single correctly rounded multiply, then truncation: identical on
    // every IEEE-754 platform.
    const double scaled = x * 1e14;
    if (!(scaled > 0.0)) return 0;
    return static_cast<std::uint64_t>(scaled);
}

std::pair<Bytes, TentMapState> keystream_bytes(TentMapState state, std::size_t n) {
    Bytes out(n);
    for (auto& byte : out) {
        state = step(state);
        byte = static_cast<std::uint8_t>(quantize(state.x) & 0xFFu);
    }
    return {std::move(out), state};
}

std::pair<Permutation, TentMapState> sort_index_permutation(TentMapState state, std::size_t n) {
    std::vector<double> values(n);
    for (auto& v : values) {
        state = step(state);
        v = state.x;
    }
    Permutation perm;
    perm.indices.resize(n);
    std::iota(perm.indices.begin(), perm.indices.end(), std::size_t{0});
    std::stable_sort(perm.indices.begin(), perm.indices.end(),
                     [&values](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    return {std::move(perm), state};
}

std::pair<std::size_t, TentMapState> index_draw(TentMapState state, std::size_t modulus) {
    if (modulus == 0) throw Error(ErrorCode::InvalidArgument, "index_draw modulus must be >= 1");
    state = step(state);
    return {static_cast<std::size_t>(quantize(state.x) % modulus), state};
}

bool Permutation::is_bijection() const {
    std::vector<bool> seen(indices.size(), false);
    for (auto i : indices) {
        if (i >= indices.size() || seen[i]) return false;
        seen[i] = true;
    }
    return true;
}

Permutation Permutation::inverse() const {
    Permutation inv;
    inv.indices.resize(indices.size());
    for (std::size_t k = 0; k < indices.size(); ++k) inv.indices[indices[k]] = k;
    return inv;
}

}  // namespace chaofuzz::chaos
