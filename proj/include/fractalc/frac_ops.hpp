#pragma once

#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fractalc/corpus.hpp"

namespace fractalc {

inline constexpr int kDefaultNodes = 4096;
inline constexpr int kOracleNodes = 16384;

/// Fractional order alpha, strictly inside (0, 1).
class FracOrder {
public:
    explicit FracOrder(double alpha);
    double value() const { return alpha_; }

private:
    double alpha_;
};

enum class Direction { Plus, Minus };

inline double sign(Direction d) { return d == Direction::Plus ? 1.0 : -1.0; }
std::string to_string(Direction d);

/// Outer d/dt stencil applied to the integrated map. Central uses t +- 2h and
/// needs f beyond t; Backward uses t, t-2h, t-4h and stays inside [base, t].
enum class Stencil { Central, Backward };

/// Left Riemann-Liouville integral I^order_{base+}[f](t), order in (0, 1).
/// Product integration: the piecewise-linear interpolant of f on a uniform
/// grid of `nodes` cells over [base, t] is integrated exactly against the
/// kernel (t-s)^{order-1}/Gamma(order).
double rl_integral(const FuncExpr& f, double order, double base, double t, int nodes = kDefaultNodes);
/// Grid variant; `base` must be a grid node, the result is interpolated
/// linearly between the nodal values.
double rl_integral(const GridFunction& f, double order, double base, double t);

/// D^alpha_{base+}[f](t) = d/dt I^{1-alpha}_{base+}[f](t). The outer
/// derivative is a second-order difference with step 2h; the central form is
/// used when t + 2h stays inside the domain, otherwise the backward form.
double rl_derivative(const FuncExpr& f, FracOrder alpha, double base, double t,
                     int nodes = kDefaultNodes);
double rl_derivative(const GridFunction& f, FracOrder alpha, double base, double t);

/// Caputo derivative. For C^1 expressions this is I^{1-alpha}[f'] with the
/// symbolic derivative; otherwise it is the RL derivative of f - f(base).
/// Grid inputs use the L1 scheme (exact integration of the piecewise-constant
/// derivative of the interpolant).
double caputo(const FuncExpr& f, FracOrder alpha, double base, double t, int nodes = kDefaultNodes);
double caputo(const GridFunction& f, FracOrder alpha, double base, double t);

/// d/dt I^{1-alpha}_{0+}[f - f(0)](t).
double jumarie(const FuncExpr& f, FracOrder alpha, double t, int nodes = kDefaultNodes);
double jumarie(const GridFunction& f, FracOrder alpha, double t);

/// Truncated Gruenwald-Letnikov sum with h = (t - base)/n; first order in h.
double gl_derivative(const FuncExpr& f, FracOrder alpha, double base, double t, int n = kOracleNodes);

/// Gamma(gamma+1)/Gamma(gamma+1-alpha) * t^(gamma-alpha), the RL derivative of t^gamma from 0.
double power_rule_oracle(double gamma, FracOrder alpha, double t);

namespace detail {

/// I^beta at node m of samples f_0..f_N with spacing h (f_0 at the base).
double rl_integral_at_node(std::span<const double> samples, double beta, double h, std::size_t m);

/// L1 Caputo value at node m.
double l1_caputo_at_node(std::span<const double> samples, double alpha, double h, std::size_t m);

/// RL derivative at node m (m >= 2 central, m >= 4 backward) from samples.
double rl_derivative_at_node(std::span<const double> samples, double alpha, double h, std::size_t m,
                             Stencil stencil);

/// Interior product-trapezoid weights (k+1)^p - 2k^p + (k-1)^p, p = beta + 1,
/// at index k = 1..count (index 0 unused), evaluated without cancellation.
/// Tables are cached per beta and only ever grow; the returned table stays
/// valid while the pointer is held.
std::shared_ptr<const std::vector<double>> trapezoid_interior_weights(double beta, std::size_t count);

}  // namespace detail

namespace op {
struct ClassicalDerivative {};
struct RLIntegral {
    FracOrder order;
    double base = 0.0;
};
struct RLDerivative {
    FracOrder alpha;
    double base = 0.0;
};
struct Caputo {
    FracOrder alpha;
    double base = 0.0;
};
/// Base point fixed at 0.
struct Jumarie {
    FracOrder alpha;
};
struct GrunwaldLetnikov {
    FracOrder alpha;
    double base = 0.0;
};
struct BCLocal {
    FracOrder alpha;
    Direction sigma = Direction::Plus;
};
struct KGLocal {
    FracOrder alpha;
    Direction sigma = Direction::Plus;
};
/// T(f) = d f ln|f|
struct Entropy {
    FuncExpr d;
};
/// T(f) = c f' + d f ln|f|
struct KonigMilman {
    FuncExpr c;
    FuncExpr d;
};
}  // namespace op

using OperatorHandle =
    std::variant<op::ClassicalDerivative, op::RLIntegral, op::RLDerivative, op::Caputo, op::Jumarie,
                 op::GrunwaldLetnikov, op::BCLocal, op::KGLocal, op::Entropy, op::KonigMilman>;

std::string describe(const OperatorHandle& op);

}  // namespace fractalc
