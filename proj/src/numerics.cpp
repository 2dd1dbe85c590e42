#include "fractalc/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fractalc/errors.hpp"

namespace fractalc {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

double lanczos_gamma(double x) {
    // Gamma(x) for x >= 0.5
    const double z = x - 1.0;
    double sum = kLanczosCoef[0];
    for (std::size_t i = 1; i < kLanczosCoef.size(); ++i)
        sum += kLanczosCoef[i] / (z + static_cast<double>(i));
    const double t = z + kLanczosG + 0.5;
    // t^(z+0.5) * e^-t split in two halves to stay finite up to x ~ 171
    const double half = std::pow(t, 0.5 * (z + 0.5));
    return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * sum;
}

}  // namespace

double gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError("gamma: argument must be a positive finite number, got " +
                          std::to_string(x));
    if (x < 0.5) return lanczos_gamma(x + 1.0) / x;
    return lanczos_gamma(x);
}

std::string_view to_string(LimitStatus s) {
    switch (s) {
        case LimitStatus::Converged: return "Converged";
        case LimitStatus::Divergent: return "Divergent";
        case LimitStatus::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

std::vector<double> dyadic_ladder(double h0, int count) {
    if (!(h0 > 0.0) || count < 1) throw ArgumentError("dyadic_ladder: need h0 > 0 and count >= 1");
    std::vector<double> h(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) h[static_cast<std::size_t>(k)] = std::ldexp(h0, -k);
    return h;
}

LimitEstimate extrapolate_limit(std::span<const LimitSample> samples, double tolerance) {
    const std::size_t n = samples.size();
    if (n < 4) throw ArgumentError("extrapolate_limit: at least 4 scales are required");
    if (!(tolerance > 0.0)) throw ArgumentError("extrapolate_limit: tolerance must be positive");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(samples[i].h > 0.0)) throw ArgumentError("extrapolate_limit: h must be positive");
        if (i > 0 && !(samples[i].h < samples[i - 1].h))
            throw ArgumentError("extrapolate_limit: h must be strictly decreasing");
    }
    const double ratio = samples[1].h / samples[0].h;
    for (std::size_t i = 2; i < n; ++i) {
        const double r = samples[i].h / samples[i - 1].h;
        if (std::abs(r - ratio) > 1e-9 * ratio)
            throw ArgumentError("extrapolate_limit: ladder is not geometric");
    }

    double scale = 0.0;
    bool finite = true;
    for (const auto& s : samples) {
        finite = finite && std::isfinite(s.value);
        scale = std::max(scale, std::abs(s.value));
    }
    if (!finite) {
        return {samples.back().value, LimitStatus::Divergent,
                std::numeric_limits<double>::infinity(), static_cast<int>(n)};
    }
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * scale;

    // columns[0] is the raw sequence; each further column removes one more
    // error term. Entries are aligned at the fine (small-h) end.
    std::vector<std::vector<double>> columns;
    columns.emplace_back();
    for (const auto& s : samples) columns[0].push_back(s.value);
    while (columns.back().size() >= 3) {
        const auto& prev = columns.back();
        std::vector<double> next;
        for (std::size_t i = 2; i < prev.size(); ++i) {
            const double d1 = prev[i - 1] - prev[i - 2];
            const double d2 = prev[i] - prev[i - 1];
            double v = prev[i];
            if (std::abs(d1) > noise && std::abs(d2) > noise) {
                const double r = d2 / d1;
                if (std::abs(r) < 1.0 - 1e-6) v = prev[i] + d2 * r / (1.0 - r);
            }
            next.push_back(v);
        }
        columns.push_back(std::move(next));
    }

    // Pick the column whose two finest entries agree best.
    double best_gap = std::numeric_limits<double>::infinity();
    double best_value = columns[0].back();
    for (const auto& col : columns) {
        if (col.size() < 2) continue;
        const double gap = std::abs(col[col.size() - 1] - col[col.size() - 2]);
        if (std::isfinite(gap) && gap < best_gap) {
            best_gap = gap;
            best_value = col.back();
        }
    }

    const auto& raw = columns[0];
    const double d_last = std::abs(raw[n - 1] - raw[n - 2]);
    const double d_prev = std::abs(raw[n - 2] - raw[n - 3]);
    const bool shrinking = d_last <= noise || d_last < d_prev;
    const bool growing = d_last > noise && d_last >= 1.5 * d_prev;

    LimitEstimate out;
    out.scales_used = static_cast<int>(n);
    out.value = best_value;
    out.error_bar = best_gap;
    if (best_gap <= tolerance && shrinking)
        out.status = LimitStatus::Converged;
    else if (growing)
        out.status = LimitStatus::Divergent;
    else
        out.status = LimitStatus::Inconclusive;
    return out;
}

}  // namespace fractalc
