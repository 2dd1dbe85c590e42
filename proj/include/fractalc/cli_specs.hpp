#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fractalc/corpus.hpp"
#include "fractalc/frac_ops.hpp"

namespace fractalc {

/// Function specs for the command line:
///   spec    := product ('+' product)*
///   product := atom ('*' atom)*
///   atom    := const:c | monomial:coef,exp | exp:rate | cos:freq
///            | weierstrass:alpha[,q[,terms]]
/// e.g. "monomial:1,0.5+exp:-1". Throws ArgumentError on malformed input.
FuncExpr parse_function_spec(std::string_view spec, Interval domain = {});

/// "a,b" with a < b.
Interval parse_interval(std::string_view text);

struct RangeSpec {
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;
};

/// "lo,hi,n" with n >= 2 (or n == 1 and lo == hi).
RangeSpec parse_range(std::string_view text);
std::vector<double> range_points(const RangeSpec& r);

/// "+", "plus", "-" or "minus".
Direction parse_direction(std::string_view text);

/// Comma-separated doubles; ArgumentError on anything else.
std::vector<double> parse_numbers(std::string_view text);

}  // namespace fractalc
