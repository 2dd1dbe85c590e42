#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace fractalc {

/// Gamma function for x > 0. Lanczos approximation (g = 7, 9 terms) with the
/// recurrence used below x = 0.5; relative error stays under 1e-12 on [0.1, 50].
double gamma(double x);

enum class LimitStatus { Converged, Divergent, Inconclusive };

std::string_view to_string(LimitStatus s);

/// Extrapolated one-sided limit.
///
/// Invariants:
///  - Converged: error_bar is finite and the two final entries of the chosen
///    acceleration column differ by at most the requested tolerance, and the
///    raw increments over the last three scales shrink.
///  - Divergent: the last raw increment is at least 1.5x the previous one.
struct LimitEstimate {
    double value = 0.0;
    LimitStatus status = LimitStatus::Inconclusive;
    double error_bar = 0.0;
    int scales_used = 0;
};

struct LimitSample {
    double h;
    double value;
};

/// Richardson-style extrapolation of lim_{h->0+} value(h) along a geometric
/// ladder. Each acceleration stage estimates its own order from three
/// consecutive entries (for a geometric ladder this is the Aitken form of
/// Richardson's rule), so errors of the form c*h^p with unknown p are removed.
///
/// Throws ArgumentError if fewer than 4 samples are supplied, h is not
/// strictly decreasing and positive, or consecutive ratios are not constant.
LimitEstimate extrapolate_limit(std::span<const LimitSample> samples, double tolerance);

/// h_k = h0 * 2^{-k}, k = 0..count-1.
std::vector<double> dyadic_ladder(double h0 = 0.1, int count = 13);

}  // namespace fractalc
