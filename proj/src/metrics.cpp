#include "chaofuzz/metrics.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "json.hpp"

#include "chaofuzz/error.hpp"

namespace chaofuzz::metrics {

namespace {

void require_same_size(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    if (a.size() != b.size() || a.empty()) {
        throw Error(ErrorCode::DimensionMismatch, "operands hold " + std::to_string(a.size()) +
                                                      " and " + std::to_string(b.size()) +
                                                      " pixels");
    }
}

struct PairOffsets {
    std::size_t rows;
    std::size_t cols;
    std::size_t dr;
    std::size_t dc;
};

PairOffsets pair_offsets(const GrayImage& img, Direction direction) {
    switch (direction) {
        case Direction::Horizontal: return {img.height(), img.width() - 1, 0, 1};
        case Direction::Vertical: return {img.height() - 1, img.width(), 1, 0};
        case Direction::Diagonal: return {img.height() - 1, img.width() - 1, 1, 1};
    }
    return {0, 0, 0, 0};
}

}  // namespace

std::string_view to_string(Direction d) noexcept {
    switch (d) {
        case Direction::Horizontal: return "horizontal";
        case Direction::Vertical: return "vertical";
        case Direction::Diagonal: return "diagonal";
    }
    return "unknown";
}

Histogram histogram(std::span<const std::uint8_t> data) {
    Histogram total{};
    const auto n = static_cast<std::ptrdiff_t>(data.size());
#pragma omp parallel
    {
        Histogram local{};
#pragma omp for nowait schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) ++local[data[static_cast<std::size_t>(i)]];
#pragma omp critical(chaofuzz_histogram)
        for (std::size_t v = 0; v < 256; ++v) total[v] += local[v];
    }
    return total;
}

double entropy_from_histogram(const Histogram& hist) {
    std::uint64_t n = 0;
    for (auto c : hist) n += c;
    if (n == 0) return 0.0;
    double h = 0.0;
    for (auto c : hist) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(n);
        h -= p * std::log2(p);
    }
    return h;
}

double entropy(std::span<const std::uint8_t> data) { return entropy_from_histogram(histogram(data)); }

double correlation(const GrayImage& img, Direction direction) {
    const auto [rows, cols, dr, dc] = pair_offsets(img, direction);
    const std::size_t width = img.width();
    const auto px = img.pixels();

    // Integer moments are exact, so the reduction order cannot change r.
    std::uint64_t sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    const auto row_count = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for reduction(+ : sx, sy, sxx, syy, sxy) schedule(static)
    for (std::ptrdiff_t r = 0; r < row_count; ++r) {
        const std::size_t base = static_cast<std::size_t>(r) * width;
        const std::size_t next = (static_cast<std::size_t>(r) + dr) * width + dc;
        for (std::size_t c = 0; c < cols; ++c) {
            const std::uint64_t x = px[base + c];
            const std::uint64_t y = px[next + c];
            sx += x;
            sy += y;
            sxx += x * x;
            syy += y * y;
            sxy += x * y;
        }
    }

    const auto n = static_cast<__int128>(rows) * static_cast<__int128>(cols);
    const __int128 cov = n * sxy - static_cast<__int128>(sx) * sy;
    const __int128 var_x = n * sxx - static_cast<__int128>(sx) * sx;
    const __int128 var_y = n * syy - static_cast<__int128>(sy) * sy;
    if (n < 2 || var_x == 0 || var_y == 0) {
        throw Error(ErrorCode::DegenerateVariance,
                    std::string("constant pixel pairs in ") + std::string(to_string(direction)) +
                        " direction");
    }
    return static_cast<double>(cov) /
           std::sqrt(static_cast<double>(var_x) * static_cast<double>(var_y));
}

double npcr(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    require_same_size(a, b);
    std::uint64_t changed = 0;
    const auto n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for reduction(+ : changed) schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        changed += a[static_cast<std::size_t>(i)] != b[static_cast<std::size_t>(i)] ? 1u : 0u;
    }
    return 100.0 * static_cast<double>(changed) / static_cast<double>(a.size());
}

double uaci(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    require_same_size(a, b);
    std::uint64_t total = 0;
    const auto n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for reduction(+ : total) schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const int d = int{a[static_cast<std::size_t>(i)]} - int{b[static_cast<std::size_t>(i)]};
        total += static_cast<std::uint64_t>(std::abs(d));
    }
    return 100.0 * static_cast<double>(total) / (255.0 * static_cast<double>(a.size()));
}

double npcr(const GrayImage& a, const GrayImage& b) {
    if (!a.same_shape(b)) throw Error(ErrorCode::DimensionMismatch, "image shapes differ");
    return npcr(a.pixels(), b.pixels());
}

double uaci(const GrayImage& a, const GrayImage& b) {
    if (!a.same_shape(b)) throw Error(ErrorCode::DimensionMismatch, "image shapes differ");
    return uaci(a.pixels(), b.pixels());
}

SecurityReport build_report(const GrayImage& img, const GrayImage* pair) {
    if (pair && !img.same_shape(*pair)) {
        throw Error(ErrorCode::DimensionMismatch, "report pair has a different shape");
    }
    SecurityReport report;
    report.width = img.width();
    report.height = img.height();
    report.histogram = histogram(img);
    report.entropy = entropy_from_histogram(report.histogram);
    for (std::size_t i = 0; i < kDirections.size(); ++i) {
        auto& entry = report.correlations[i];
        entry.direction = kDirections[i];
        try {
            entry.value = correlation(img, kDirections[i]);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DegenerateVariance) throw;
            entry.unavailable_reason = e.what();
        }
    }
    if (pair) {
        report.npcr = npcr(img, *pair);
        report.uaci = uaci(img, *pair);
    }
    return report;
}

std::string report_to_text(const SecurityReport& report) {
    std::ostringstream out;
    out.precision(6);
    out << std::fixed;
    out << "width " << report.width << '\n';
    out << "height " << report.height << '\n';
    out << "entropy " << report.entropy << '\n';
    for (const auto& c : report.correlations) {
        out << "corr_" << to_string(c.direction) << ' ';
        if (c.value) {
            out << *c.value << '\n';
        } else {
            out << "n/a\n";
        }
    }
    if (report.npcr) out << "npcr " << *report.npcr << '\n';
    if (report.uaci) out << "uaci " << *report.uaci << '\n';
    return out.str();
}

std::string report_to_json(const SecurityReport& report) {
    nlohmann::json j;
    j["width"] = report.width;
    j["height"] = report.height;
    j["entropy"] = report.entropy;
    for (const auto& c : report.correlations) {
        const std::string key = "corr_" + std::string(to_string(c.direction));
        if (c.value) {
            j[key] = *c.value;
        } else {
            j[key] = nullptr;
            j[key + "_reason"] = c.unavailable_reason;
        }
    }
    if (report.npcr) j["npcr"] = *report.npcr;
    if (report.uaci) j["uaci"] = *report.uaci;
    j["histogram"] = report.histogram;
    return j.dump(2);
}

std::string histogram_to_csv(const Histogram& hist) {
    std::string out;
    for (std::size_t v = 0; v < hist.size(); ++v) {
        if (v) out += ',';
        out += std::to_string(hist[v]);
    }
    out += '\n';
    return out;
}

}  // namespace chaofuzz::metrics
