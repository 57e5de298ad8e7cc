// Line-oriented FIS configuration format:
//
//   # comment
//   [system]
//   name = FIS1
//   grid = 1001
//   [input Entropy]
//   range = 0 8
//   term Low = 0 6          (center sigma)
//   term High = 8 1.7
//   [output S-Dive]
//   range = 0 1
//   term Low = 0 0.2125
//   term High = 1 0.2125
//   [rules]
//   IF Entropy IS Low AND SEC IS High THEN S-Dive IS Low
//
// Whitespace is insignificant apart from separating tokens; rule keywords are
// case-insensitive.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>

#include "chaofuzz/error.hpp"
#include "chaofuzz/fis.hpp"

namespace chaofuzz::fis {

namespace {

std::vector<std::string> tokenize(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) out.push_back(std::move(cur));
        cur.clear();
    };
    for (char ch : line) {
        if (std::isspace(static_cast<unsigned char>(ch))) {
            flush();
        } else if (ch == '=') {
            flush();
            out.emplace_back("=");
        } else {
            cur += ch;
        }
    }
    flush();
    return out;
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& msg) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + msg);
}

double parse_number(const std::string& tok, std::size_t line_no) {
    double v = 0.0;
    const auto* end = tok.data() + tok.size();
    const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc() || ptr != end) parse_fail(line_no, "expected a number, got '" + tok + "'");
    return v;
}

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

FuzzyRule parse_rule(const std::vector<std::string>& tok, std::size_t line_no) {
    // IF v IS t (AND v IS t)* THEN v IS t
    if (tok.size() < 8 || upper(tok[0]) != "IF") parse_fail(line_no, "rule must start with IF");
    FuzzyRule r;
    std::size_t i = 1;
    while (true) {
        if (i + 2 >= tok.size() || upper(tok[i + 1]) != "IS") parse_fail(line_no, "expected '<var> IS <term>'");
        r.antecedents.push_back({tok[i], tok[i + 2]});
        i += 3;
        if (i >= tok.size()) parse_fail(line_no, "rule has no THEN clause");
        const std::string kw = upper(tok[i]);
        if (kw == "AND") {
            ++i;
            continue;
        }
        if (kw == "THEN") break;
        parse_fail(line_no, "expected AND or THEN, got '" + tok[i] + "'");
    }
    ++i;
    if (i + 3 != tok.size() || upper(tok[i + 1]) != "IS") {
        parse_fail(line_no, "expected 'THEN <var> IS <term>' at end of rule");
    }
    r.consequent = {tok[i], tok[i + 2]};
    return r;
}

}  // namespace

FisConfig load_fis_config(std::string_view text) {
    enum class Section { None, System, Input, Output, Rules };
    FisConfig config;
    Section section = Section::None;
    LinguisticVariable* current = nullptr;
    bool have_output = false;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos) continue;
        line = line.substr(first);

        if (line.front() == '[') {
            const auto close = line.find(']');
            if (close == std::string_view::npos) parse_fail(line_no, "unterminated section header");
            const auto head = tokenize(line.substr(1, close - 1));
            if (head.empty()) parse_fail(line_no, "empty section header");
            const std::string kind = upper(head[0]);
            if (kind == "SYSTEM" && head.size() == 1) {
                section = Section::System;
            } else if (kind == "RULES" && head.size() == 1) {
                section = Section::Rules;
            } else if (kind == "INPUT" && head.size() == 2) {
                section = Section::Input;
                config.inputs.push_back({head[1], 0.0, 0.0, {}});
                current = &config.inputs.back();
            } else if (kind == "OUTPUT" && head.size() == 2) {
                if (have_output) parse_fail(line_no, "more than one output section");
                section = Section::Output;
                have_output = true;
                config.output = {head[1], 0.0, 0.0, {}};
                current = &config.output;
            } else {
                parse_fail(line_no, "unknown section '" + std::string(line.substr(0, close + 1)) + "'");
            }
            continue;
        }

        const auto tok = tokenize(line);
        switch (section) {
            case Section::None:
                parse_fail(line_no, "content before the first section");
            case Section::System: {
                if (tok.size() != 3 || tok[1] != "=") parse_fail(line_no, "expected 'key = value'");
                if (tok[0] == "name") {
                    config.name = tok[2];
                } else if (tok[0] == "grid") {
                    const double g = parse_number(tok[2], line_no);
                    if (g < 0 || g != static_cast<double>(static_cast<std::size_t>(g))) {
                        parse_fail(line_no, "grid must be a non-negative integer");
                    }
                    config.defuzz_grid = static_cast<std::size_t>(g);
                } else {
                    parse_fail(line_no, "unknown system key '" + tok[0] + "'");
                }
                break;
            }
            case Section::Input:
            case Section::Output: {
                if (tok.size() == 4 && tok[0] == "range" && tok[1] == "=") {
                    current->lo = parse_number(tok[2], line_no);
                    current->hi = parse_number(tok[3], line_no);
                } else if (tok.size() == 5 && tok[0] == "term" && tok[2] == "=") {
                    current->terms.push_back(
                        {tok[1], {parse_number(tok[3], line_no), parse_number(tok[4], line_no)}});
                } else {
                    parse_fail(line_no, "expected 'range = lo hi' or 'term <label> = center sigma'");
                }
                break;
            }
            case Section::Rules:
                config.rules.push_back(parse_rule(tok, line_no));
                break;
        }
    }
    if (!have_output) throw Error(ErrorCode::ParseError, "missing [output] section");
    config.validate();
    return config;
}

std::string serialize_fis_config(const FisConfig& config) {
    std::ostringstream out;
    out << "[system]\n";
    if (!config.name.empty()) out << "name = " << config.name << '\n';
    out << "grid = " << config.defuzz_grid << '\n';
    auto emit = [&out](const char* kind, const LinguisticVariable& v) {
        out << '\n' << '[' << kind << ' ' << v.name << "]\n";
        out << "range = " << format_number(v.lo) << ' ' << format_number(v.hi) << '\n';
        for (const auto& t : v.terms) {
            out << "term " << t.label << " = " << format_number(t.mf.center) << ' '
                << format_number(t.mf.sigma) << '\n';
        }
    };
    for (const auto& v : config.inputs) emit("input", v);
    emit("output", config.output);
    out << "\n[rules]\n";
    for (const auto& r : config.rules) {
        out << "IF ";
        for (std::size_t i = 0; i < r.antecedents.size(); ++i) {
            if (i) out << " AND ";
            out << r.antecedents[i].variable << " IS " << r.antecedents[i].term;
        }
        out << " THEN " << r.consequent.variable << " IS " << r.consequent.term << '\n';
    }
    return out.str();
}

}  // namespace chaofuzz::fis
