// Sequential reference for the metric kernels. Written from the textbook
// definitions (floating-point means and moments, brute-force symbol counts)
// so it does not share a code path with the parallel versions.

#include <cmath>
#include <string>

#include "chaofuzz/error.hpp"
#include "chaofuzz/metrics.hpp"

namespace chaofuzz::metrics::serial {

Histogram histogram(std::span<const std::uint8_t> data) {
    Histogram h{};
    for (auto v : data) ++h[v];
    return h;
}

double entropy(std::span<const std::uint8_t> data) {
    if (data.empty()) return 0.0;
    double h = 0.0;
    for (int symbol = 0; symbol < 256; ++symbol) {
        std::size_t count = 0;
        for (auto v : data) count += v == symbol;
        if (count == 0) continue;
        const double p = static_cast<double>(count) / static_cast<double>(data.size());
        h += p * std::log2(1.0 / p);
    }
    return h;
}

double correlation(const GrayImage& img, Direction direction) {
    std::size_t dr = 0, dc = 0;
    switch (direction) {
        case Direction::Horizontal: dc = 1; break;
        case Direction::Vertical: dr = 1; break;
        case Direction::Diagonal: dr = dc = 1; break;
    }
    std::vector<double> xs, ys;
    for (std::size_t r = 0; r + dr < img.height(); ++r) {
        for (std::size_t c = 0; c + dc < img.width(); ++c) {
            xs.push_back(img.at(r, c));
            ys.push_back(img.at(r + dr, c + dc));
        }
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double cov = 0, vx = 0, vy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        cov += (xs[i] - mx) * (ys[i] - my);
        vx += (xs[i] - mx) * (xs[i] - mx);
        vy += (ys[i] - my) * (ys[i] - my);
    }
    cov /= n;
    vx /= n;
    vy /= n;
    if (vx == 0.0 || vy == 0.0) throw Error(ErrorCode::DegenerateVariance, "constant pixel pairs");
    return cov / (std::sqrt(vx) * std::sqrt(vy));
}

double npcr(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "operand sizes differ");
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] == b[i] ? 0.0 : 1.0;
    return d / static_cast<double>(a.size()) * 100.0;
}

double uaci(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "operand sizes differ");
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::fabs(static_cast<double>(a[i]) - static_cast<double>(b[i])) / 255.0;
    }
    return s / static_cast<double>(a.size()) * 100.0;
}

}  // namespace chaofuzz::metrics::serial
