#pragma once

// Mamdani fuzzy inference: min for AND, min (clipping) implication, max
// aggregation, centroid defuzzification over a uniform grid.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace chaofuzz::fis {

struct GaussianMF {
    double center = 0.0;
    double sigma = 1.0;
    friend bool operator==(const GaussianMF&, const GaussianMF&) = default;
};

/// exp(-(x - center)^2 / (2 sigma^2))
double membership(const GaussianMF& mf, double x);

struct Term {
    std::string label;
    GaussianMF mf;
    friend bool operator==(const Term&, const Term&) = default;
};

struct LinguisticVariable {
    std::string name;
    double lo = 0.0;
    double hi = 1.0;
    std::vector<Term> terms;

    const Term* find_term(std::string_view label) const;
    friend bool operator==(const LinguisticVariable&, const LinguisticVariable&) = default;
};

struct Clause {
    std::string variable;
    std::string term;
    friend bool operator==(const Clause&, const Clause&) = default;
};

struct FuzzyRule {
    std::vector<Clause> antecedents;  // joined by AND
    Clause consequent;
    friend bool operator==(const FuzzyRule&, const FuzzyRule&) = default;
};

inline constexpr std::size_t kDefaultGrid = 1001;
inline constexpr std::size_t kMinGrid = 101;

struct FisConfig {
    std::string name;
    std::vector<LinguisticVariable> inputs;
    LinguisticVariable output;
    std::vector<FuzzyRule> rules;
    std::size_t defuzz_grid = kDefaultGrid;

    /// Throws ValidationError on dangling references, non-positive sigma,
    /// empty rule list, bad ranges or a grid below kMinGrid.
    void validate() const;
    const LinguisticVariable* find_input(std::string_view name) const;
    friend bool operator==(const FisConfig&, const FisConfig&) = default;
};

using Inputs = std::map<std::string, double, std::less<>>;

struct Evaluation {
    std::vector<double> firing_strengths;  // one per rule, in rule order
    double output = 0.0;
};

/// Inputs are clamped to their variable ranges. When no rule fires the
/// midpoint of the output range is returned.
Evaluation evaluate_detailed(const FisConfig& config, const Inputs& inputs);
double evaluate(const FisConfig& config, const Inputs& inputs);

/// Number of evaluate calls made by this process. Lets callers check that a
/// code path performs no fuzzy inference.
std::uint64_t evaluation_count() noexcept;

/// Expected NPCR and UACI (percent) between two independent uniform 8-bit
/// images: 100 * 255/256 and 100 * 257/768.
inline constexpr double kIdealNpcr = 100.0 * 255.0 / 256.0;
inline constexpr double kIdealUaci = 100.0 * 257.0 / 768.0;

/// S-Dive from (Entropy in [0,8], SEC in [0,100]).
FisConfig fis1_default();
/// D-Dive from (UACI, NPCR, SEC), all in [0,100].
FisConfig fis2_default();

FisConfig load_fis_config(std::string_view text);
std::string serialize_fis_config(const FisConfig& config);

}  // namespace chaofuzz::fis
