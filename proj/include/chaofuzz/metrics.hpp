#pragma once

// Security metrics over grayscale images: histogram, Shannon entropy,
// adjacent-pixel correlation, NPCR and UACI.
//
// The kernels are OpenMP-parallel but accumulate exact integer sums, so the
// result does not depend on the thread count. metrics::serial holds a plain
// sequential reference used by the tests and the benchmark.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "chaofuzz/image.hpp"

namespace chaofuzz::metrics {

using Histogram = std::array<std::uint64_t, 256>;

enum class Direction { Horizontal, Vertical, Diagonal };

inline constexpr std::array<Direction, 3> kDirections = {Direction::Horizontal, Direction::Vertical,
                                                         Direction::Diagonal};

std::string_view to_string(Direction d) noexcept;

Histogram histogram(std::span<const std::uint8_t> data);
inline Histogram histogram(const GrayImage& img) { return histogram(img.pixels()); }

double entropy_from_histogram(const Histogram& hist);
double entropy(std::span<const std::uint8_t> data);
inline double entropy(const GrayImage& img) { return entropy(img.pixels()); }

/// Pearson r over every adjacent pair in the direction, population moments.
/// Throws DegenerateVariance when either side of the pairs is constant.
double correlation(const GrayImage& img, Direction direction);

/// Percentages in [0,100]. Throw DimensionMismatch on unequal sizes.
double npcr(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
double uaci(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
double npcr(const GrayImage& a, const GrayImage& b);
double uaci(const GrayImage& a, const GrayImage& b);

struct CorrelationEntry {
    Direction direction = Direction::Horizontal;
    std::optional<double> value;
    std::string unavailable_reason;
};

struct SecurityReport {
    std::size_t width = 0;
    std::size_t height = 0;
    double entropy = 0.0;
    std::array<CorrelationEntry, 3> correlations{};
    std::optional<double> npcr;
    std::optional<double> uaci;
    Histogram histogram{};
};

SecurityReport build_report(const GrayImage& img, const GrayImage* pair = nullptr);

/// "name value" lines.
std::string report_to_text(const SecurityReport& report);
std::string report_to_json(const SecurityReport& report);
/// 256 comma-separated counts on one line.
std::string histogram_to_csv(const Histogram& hist);

namespace serial {

Histogram histogram(std::span<const std::uint8_t> data);
double entropy(std::span<const std::uint8_t> data);
double correlation(const GrayImage& img, Direction direction);
double npcr(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
double uaci(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

}  // namespace serial

}  // namespace chaofuzz::metrics
