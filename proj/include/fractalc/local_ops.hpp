#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fractalc/corpus.hpp"
#include "fractalc/frac_ops.hpp"
#include "fractalc/numerics.hpp"

namespace fractalc {

struct LadderOptions {
    double h0 = 0.05;
    int scales = 10;
    double tolerance = 1e-6;
    /// Cells per KG window [y, y + h].
    int window_nodes = 256;
};

/// One estimate of a one-sided local derivative at y.
struct LocalProbe {
    double y = 0.0;
    Direction sigma = Direction::Plus;
    double alpha = 0.0;
    std::vector<double> ladder;  // h values, decreasing
    std::vector<double> raw;     // estimator value at each h
    LimitEstimate result;
};

/// Dyadic ladder h0 2^{-k} restricted so that y + sigma h stays in the domain
/// and h stays above 16 q^{-N} for truncated Weierstrass terms. At least four
/// scales are kept; throws DomainError when y has no room on the sigma side.
std::vector<double> local_ladder(const FuncExpr& f, double y, Direction sigma,
                                 const LadderOptions& opt = {});

/// Gamma(1+alpha) lim sigma (f(y + sigma h) - f(y)) / h^alpha.
LocalProbe bc_lfd(const FuncExpr& f, FracOrder alpha, double y, Direction sigma,
                  const LadderOptions& opt = {});

/// lim_{h->0+} D^alpha_{0+}[g](h) with g(v) = sigma (f(y + sigma v) - f(y)),
/// i.e. the base-point-shifted RL derivative approached from the sigma side.
/// Each scale integrates over its own window with opt.window_nodes cells and
/// a backward outer stencil, so only f on [y, y + sigma h] is sampled.
LocalProbe kg_lfd(const FuncExpr& f, FracOrder alpha, double y, Direction sigma,
                  const LadderOptions& opt = {});

struct AgreementReport {
    LocalProbe kg;
    LocalProbe bc;
    std::optional<double> gap;  // set only when both estimates converged
    std::string note;
};

AgreementReport kg_bc_agreement(const FuncExpr& f, FracOrder alpha, double y, Direction sigma,
                                const LadderOptions& opt = {});

enum class LocalEstimator { KG, BC };

struct SweepResult {
    double fraction = 0.0;
    double tol = 0.0;
    std::vector<LocalProbe> probes;

    /// CSV: y,estimate,status,error_bar
    void write_csv(std::ostream& os) const;
};

/// Fraction of m equispaced points of [lo, hi] where the local derivative
/// estimate converges to a value within tol of zero.
/// Throws ArgumentError if f has no declared Hoelder exponent or the declared
/// exponent is below alpha.
SweepResult triviality_sweep(const FuncExpr& f, FracOrder alpha, double lo, double hi, int m,
                             double tol = 1e-3, const LadderOptions& opt = {},
                             LocalEstimator estimator = LocalEstimator::KG);

/// max - min of the last three raw estimator values.
double final_spread(const LocalProbe& p);

/// q^{-alpha (N+1)} / (1 - q^{-alpha}): sup-norm distance of the truncated
/// Weierstrass sum to the full series.
double weierstrass_tail_bound(double alpha, double q, int terms);

}  // namespace fractalc
