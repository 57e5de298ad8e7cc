#pragma once

// Dense-grid Mamdani oracle for the fuzzy engine tests. Written separately
// from the library: its own Gaussian, per-rule clipped sets built first and
// merged afterwards, and a midpoint-rule centroid.

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "chaofuzz/fis.hpp"

namespace oracle {

inline double gauss(double x, double c, double s) { return std::exp(-0.5 * ((x - c) / s) * ((x - c) / s)); }

inline double dense_centroid(const chaofuzz::fis::FisConfig& cfg, const std::map<std::string, double>& in,
                             std::size_t cells = 100000) {
    const double lo = cfg.output.lo, hi = cfg.output.hi;
    const double width = (hi - lo) / static_cast<double>(cells);
    std::vector<std::vector<double>> clipped;
    for (const auto& rule : cfg.rules) {
        double w = 1.0;
        for (const auto& a : rule.antecedents) {
            const auto& var = *std::find_if(cfg.inputs.begin(), cfg.inputs.end(),
                                            [&](const auto& v) { return v.name == a.variable; });
            const auto& term = *std::find_if(var.terms.begin(), var.terms.end(),
                                             [&](const auto& t) { return t.label == a.term; });
            const double x = std::clamp(in.at(a.variable), var.lo, var.hi);
            w = std::min(w, gauss(x, term.mf.center, term.mf.sigma));
        }
        const auto& out = *std::find_if(cfg.output.terms.begin(), cfg.output.terms.end(),
                                        [&](const auto& t) { return t.label == rule.consequent.term; });
        std::vector<double> set(cells);
        for (std::size_t i = 0; i < cells; ++i) {
            const double y = lo + (static_cast<double>(i) + 0.5) * width;
            set[i] = std::min(w, gauss(y, out.mf.center, out.mf.sigma));
        }
        clipped.push_back(std::move(set));
    }
    double num = 0, den = 0;
    for (std::size_t i = 0; i < cells; ++i) {
        double m = 0;
        for (const auto& set : clipped) m = std::max(m, set[i]);
        const double y = lo + (static_cast<double>(i) + 0.5) * width;
        num += m * y;
        den += m;
    }
    return den > 0 ? num / den : 0.5 * (lo + hi);
}

}  // namespace oracle
