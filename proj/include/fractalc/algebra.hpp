#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fractalc/corpus.hpp"
#include "fractalc/frac_ops.hpp"
#include "fractalc/local_ops.hpp"

namespace fractalc {

enum class Verdict { Satisfied, Violated, Indeterminate };

std::string_view to_string(Verdict v);

/// Separation factor between a violation and the scheme error.
inline constexpr double kViolationFactor = 10.0;

/// Violated if max_abs > 10 * error_estimate, Satisfied if
/// max_abs <= error_estimate, Indeterminate otherwise (including an
/// infinite error estimate).
Verdict classify(double max_abs, double error_estimate);

struct ResidualProfile {
    std::string property;
    std::string op;
    std::vector<std::string> corpus_ids;
    std::vector<double> probes;
    std::vector<double> residuals;
    double max_abs = 0.0;
    /// Bound on the discretization error of the residual at the probes.
    double error_estimate = 0.0;
    Verdict verdict = Verdict::Indeterminate;
};

struct Resolution {
    int nodes = kDefaultNodes;
    int oracle_nodes = kOracleNodes;
    LadderOptions ladder{};
};

/// Operator value with an a posteriori error bound: twice the shift observed
/// when the operator is re-run at doubled resolution, plus a rounding floor.
/// Local estimators that fail to converge report an infinite bound.
struct Evaluation {
    double value = 0.0;
    double error = 0.0;
};

Evaluation apply(const OperatorHandle& op, const FuncExpr& f, double t, const Resolution& res = {});

/// 8 interior points equispaced in [0.1, 0.9].
std::vector<double> default_probes();

/// D(fg) - D(f) g - f D(g)
ResidualProfile leibniz_residual(const OperatorHandle& op, const FuncExpr& f, const FuncExpr& g,
                                 const std::vector<double>& probes, const Resolution& res = {});

/// D(f o g) - (D f)(g) * D(g)
ResidualProfile chain_residual(const OperatorHandle& op, const FuncExpr& f, const FuncExpr& g,
                               const std::vector<double>& probes, const Resolution& res = {});

/// D(lambda f + mu g) - lambda D(f) - mu D(g)
ResidualProfile linearity_residual(const OperatorHandle& op, const FuncExpr& f, const FuncExpr& g,
                                   double lambda, double mu, const std::vector<double>& probes,
                                   const Resolution& res = {});

/// u ln|u| continued by 0 at u = 0.
double entropy_kernel(double u);

/// d(x) f(x) ln|f(x)| sampled on f's domain with n nodes.
GridFunction entropy_operator(const FuncExpr& d, const FuncExpr& f, int n = 257);
GridFunction entropy_operator(const FuncExpr& d, const GridFunction& f);

/// c(x) f'(x) + d(x) f(x) ln|f(x)|; throws UnsupportedVariant when f has no
/// symbolic derivative.
GridFunction konig_milman_operator(const FuncExpr& c, const FuncExpr& d, const FuncExpr& f,
                                   int n = 257);

enum class GapPath { ClosedForm, Grid };

/// jumarie(f) - caputo(f, base 0) at the probes. The grid path samples f on
/// [0, b] with res.nodes cells and uses the grid operators on both sides.
ResidualProfile caputo_jumarie_gap(const FuncExpr& f, FracOrder alpha,
                                   const std::vector<double>& probes,
                                   GapPath path = GapPath::ClosedForm, const Resolution& res = {});

/// Residuals are D(Constant(c)) at every (c, t) pair, constants outermost.
ResidualProfile constant_annihilation_check(const OperatorHandle& op,
                                            const std::vector<double>& constants,
                                            const std::vector<double>& probes,
                                            const Resolution& res = {});

}  // namespace fractalc
