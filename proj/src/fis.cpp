#include "chaofuzz/fis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>

#include "chaofuzz/error.hpp"

namespace chaofuzz::fis {

namespace {

std::atomic<std::uint64_t> g_evaluations{0};

// Two-term defaults: Low centered at the lower bound, High at the upper
// bound, sigma = 0.2125 * span.
constexpr double kSigmaFraction = 0.2125;

LinguisticVariable two_term(std::string name, double lo, double hi) {
    const double sigma = (hi - lo) * kSigmaFraction;
    return {std::move(name), lo, hi, {{"Low", {lo, sigma}}, {"High", {hi, sigma}}}};
}

FuzzyRule rule(std::vector<Clause> antecedents, Clause consequent) {
    return {std::move(antecedents), std::move(consequent)};
}

}  // namespace

double membership(const GaussianMF& mf, double x) {
    const double d = x - mf.center;
    return std::exp(-(d * d) / (2.0 * mf.sigma * mf.sigma));
}

const Term* LinguisticVariable::find_term(std::string_view label) const {
    for (const auto& t : terms) {
        if (t.label == label) return &t;
    }
    return nullptr;
}

const LinguisticVariable* FisConfig::find_input(std::string_view var) const {
    for (const auto& v : inputs) {
        if (v.name == var) return &v;
    }
    return nullptr;
}

void FisConfig::validate() const {
    auto fail = [this](const std::string& msg) {
        throw Error(ErrorCode::ValidationError, (name.empty() ? "fis" : name) + ": " + msg);
    };
    auto check_variable = [&](const LinguisticVariable& v) {
        if (v.name.empty()) fail("variable without a name");
        if (!(v.lo < v.hi)) fail("variable " + v.name + " has an empty range");
        if (v.terms.empty()) fail("variable " + v.name + " has no terms");
        std::set<std::string> labels;
        for (const auto& t : v.terms) {
            if (!labels.insert(t.label).second) fail("duplicate term " + t.label + " in " + v.name);
            if (!(t.mf.sigma > 0.0) || !std::isfinite(t.mf.sigma)) {
                fail("term " + v.name + "." + t.label + " needs sigma > 0");
            }
            if (!std::isfinite(t.mf.center)) fail("term " + v.name + "." + t.label + " center");
        }
    };

    if (inputs.empty()) fail("no input variables");
    std::set<std::string> names;
    for (const auto& v : inputs) {
        check_variable(v);
        if (!names.insert(v.name).second) fail("duplicate input " + v.name);
    }
    check_variable(output);
    if (names.count(output.name)) fail("output " + output.name + " shadows an input");
    if (rules.empty()) fail("no rules");
    if (defuzz_grid < kMinGrid) fail("defuzzification grid must have at least 101 points");

    for (const auto& r : rules) {
        if (r.antecedents.empty()) fail("rule without antecedents");
        for (const auto& c : r.antecedents) {
            const auto* v = find_input(c.variable);
            if (!v) fail("rule references unknown input " + c.variable);
            if (!v->find_term(c.term)) fail("rule references unknown term " + c.variable + "." + c.term);
        }
        if (r.consequent.variable != output.name) {
            fail("rule consequent " + r.consequent.variable + " is not the output variable");
        }
        if (!output.find_term(r.consequent.term)) {
            fail("rule references unknown output term " + r.consequent.term);
        }
    }
}

Evaluation evaluate_detailed(const FisConfig& config, const Inputs& inputs) {
    g_evaluations.fetch_add(1, std::memory_order_relaxed);

    for (const auto& [name, value] : inputs) {
        if (!config.find_input(name)) throw Error(ErrorCode::UnknownVariable, name);
    }
    std::map<std::string, double, std::less<>> crisp;
    for (const auto& v : config.inputs) {
        const auto it = inputs.find(v.name);
        if (it == inputs.end()) throw Error(ErrorCode::UnknownVariable, "missing input " + v.name);
        crisp[v.name] = std::clamp(it->second, v.lo, v.hi);
    }

    Evaluation result;
    result.firing_strengths.reserve(config.rules.size());
    std::vector<GaussianMF> consequents;
    for (const auto& r : config.rules) {
        double strength = 1.0;
        for (const auto& c : r.antecedents) {
            const auto* v = config.find_input(c.variable);
            const auto* t = v ? v->find_term(c.term) : nullptr;
            if (!t) throw Error(ErrorCode::ValidationError, "dangling term " + c.variable + "." + c.term);
            strength = std::min(strength, membership(t->mf, crisp.find(c.variable)->second));
        }
        const auto* out = config.output.find_term(r.consequent.term);
        if (!out) throw Error(ErrorCode::ValidationError, "dangling term " + r.consequent.term);
        result.firing_strengths.push_back(strength);
        consequents.push_back(out->mf);
    }

    const double lo = config.output.lo;
    const double hi = config.output.hi;
    const std::size_t n = std::max(config.defuzz_grid, std::size_t{2});
    double weighted = 0.0;
    double mass = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double y = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        double mu = 0.0;
        for (std::size_t k = 0; k < consequents.size(); ++k) {
            mu = std::max(mu, std::min(result.firing_strengths[k], membership(consequents[k], y)));
        }
        weighted += mu * y;
        mass += mu;
    }
    result.output = mass > 0.0 ? std::clamp(weighted / mass, lo, hi) : 0.5 * (lo + hi);
    return result;
}

double evaluate(const FisConfig& config, const Inputs& inputs) {
    return evaluate_detailed(config, inputs).output;
}

std::uint64_t evaluation_count() noexcept { return g_evaluations.load(std::memory_order_relaxed); }

FisConfig fis1_default() {
    FisConfig c;
    c.name = "FIS1";
    auto entropy = two_term("Entropy", 0.0, 8.0);
    // Pre-encrypted images always sit near 8 bits, so Low is kept wide enough
    // that a demanding SEC can still pull S-Dive below T1.
    entropy.terms[0].mf.sigma = 6.0;
    c.inputs = {std::move(entropy), two_term("SEC", 0.0, 100.0)};
    c.output = two_term("S-Dive", 0.0, 1.0);
    c.rules = {
        rule({{"Entropy", "Low"}, {"SEC", "High"}}, {"S-Dive", "Low"}),
        rule({{"Entropy", "High"}}, {"S-Dive", "High"}),
    };
    return c;
}

FisConfig fis2_default() {
    FisConfig c;
    c.name = "FIS2";
    auto uaci = two_term("UACI", 0.0, 100.0);
    auto npcr = two_term("NPCR", 0.0, 100.0);
    // UACI High sits on the value expected from two independent uniform
    // 8-bit images. A High at the top of the range is unreachable for UACI
    // and would keep the rounds running to the cap. NPCR High stays at 100
    // but is narrow enough that only pairs near the ideal 99.61 count.
    uaci.terms[1].mf = {kIdealUaci, 3.0};
    npcr.terms[1].mf = {100.0, 0.4};
    c.inputs = {std::move(uaci), std::move(npcr), two_term("SEC", 0.0, 100.0)};
    c.output = two_term("D-Dive", 0.0, 1.0);
    c.rules = {
        rule({{"UACI", "Low"}, {"SEC", "High"}}, {"D-Dive", "Low"}),
        rule({{"NPCR", "Low"}, {"SEC", "High"}}, {"D-Dive", "Low"}),
        rule({{"UACI", "High"}, {"NPCR", "High"}}, {"D-Dive", "High"}),
    };
    return c;
}

}  // namespace chaofuzz::fis
