#include "fractalc/cli_specs.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>

#include "fractalc/errors.hpp"

namespace fractalc {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
        throw ArgumentError("not a number: '" + std::string(s) + "'");
    return v;
}

// Splits on sep, except '+' or '-' directly after an exponent marker.
std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != sep) continue;
        if (sep == '+' && i > 0 && (s[i - 1] == 'e' || s[i - 1] == 'E') && i >= 2 &&
            (std::isdigit(static_cast<unsigned char>(s[i - 2])) || s[i - 2] == '.'))
            continue;
        out.push_back(s.substr(start, i - start));
        start = i + 1;
    }
    out.push_back(s.substr(start));
    return out;
}

FuncExpr parse_atom(std::string_view text) {
    text = trim(text);
    const auto colon = text.find(':');
    const std::string kind(trim(text.substr(0, colon)));
    std::vector<double> args;
    if (colon != std::string_view::npos) args = parse_numbers(text.substr(colon + 1));
    auto arity = [&](std::size_t lo, std::size_t hi) {
        if (args.size() < lo || args.size() > hi)
            throw ArgumentError("wrong number of arguments for '" + kind + "' in '" + std::string(text) + "'");
    };
    if (kind == "const") {
        arity(1, 1);
        return FuncExpr::constant(args[0]);
    }
    if (kind == "monomial") {
        arity(2, 2);
        return FuncExpr::monomial(args[0], args[1]);
    }
    if (kind == "exp") {
        arity(1, 1);
        return FuncExpr::exp(args[0]);
    }
    if (kind == "cos") {
        arity(1, 1);
        return FuncExpr::cos(args[0]);
    }
    if (kind == "weierstrass") {
        arity(1, 3);
        const double q = args.size() > 1 ? args[1] : 2.0;
        double terms = args.size() > 2 ? args[2] : 24.0;
        if (terms != std::floor(terms) || terms < 0 || terms > 60)
            throw ArgumentError("weierstrass terms must be an integer in [0, 60]");
        return FuncExpr::weierstrass(args[0], q, static_cast<int>(terms));
    }
    throw ArgumentError("unknown function kind '" + kind + "'");
}

}  // namespace

std::vector<double> parse_numbers(std::string_view text) {
    std::vector<double> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ',') {
            out.push_back(parse_number(text.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

FuncExpr parse_function_spec(std::string_view spec, Interval domain) {
    if (trim(spec).empty()) throw ArgumentError("empty function spec");
    std::vector<FuncExpr> terms;
    for (auto term : split(spec, '+')) {
        std::optional<FuncExpr> prod;
        for (auto atom : split(term, '*')) {
            auto f = parse_atom(atom).with_domain(domain);
            prod = prod ? FuncExpr::product(*prod, f) : f;
        }
        terms.push_back(*prod);
    }
    if (terms.size() == 1) return terms.front().with_domain(domain);
    return FuncExpr::sum(std::move(terms)).with_domain(domain);
}

Interval parse_interval(std::string_view text) {
    const auto v = parse_numbers(text);
    if (v.size() != 2 || !(v[0] < v[1])) throw ArgumentError("interval must be 'a,b' with a < b");
    return {v[0], v[1]};
}

RangeSpec parse_range(std::string_view text) {
    const auto v = parse_numbers(text);
    if (v.size() != 3) throw ArgumentError("range must be 'lo,hi,n'");
    if (v[2] != std::floor(v[2]) || v[2] < 1 || v[2] > 1e6) throw ArgumentError("range count must be an integer in [1, 1e6]");
    RangeSpec r{v[0], v[1], static_cast<int>(v[2])};
    if (r.count == 1 ? r.lo != r.hi : !(r.lo < r.hi)) throw ArgumentError("range needs lo < hi");
    return r;
}

std::vector<double> range_points(const RangeSpec& r) {
    if (r.count == 1) return {r.lo};
    std::vector<double> out;
    for (int i = 0; i < r.count; ++i)
        out.push_back(i + 1 == r.count ? r.hi : r.lo + (r.hi - r.lo) * i / (r.count - 1));
    return out;
}

Direction parse_direction(std::string_view text) {
    if (text == "+" || text == "plus") return Direction::Plus;
    if (text == "-" || text == "minus") return Direction::Minus;
    throw ArgumentError("sigma must be '+' or '-'");
}

}  // namespace fractalc
