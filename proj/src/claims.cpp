#include "fractalc/claims.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "fractalc/corpus.hpp"
#include "fractalc/derivations.hpp"
#include "fractalc/errors.hpp"
#include "fractalc/frac_ops.hpp"
#include "fractalc/local_ops.hpp"
#include "fractalc/numerics.hpp"
#include "fractalc/report.hpp"

namespace fractalc {

using nlohmann::json;

std::string_view to_string(ClaimVerdict v) {
    switch (v) {
        case ClaimVerdict::Satisfied: return "Satisfied";
        case ClaimVerdict::Violated: return "Violated";
        case ClaimVerdict::Indeterminate: return "Indeterminate";
        case ClaimVerdict::Divergent: return "Divergent";
    }
    return "?";
}

ClaimVerdict to_claim_verdict(Verdict v) {
    switch (v) {
        case Verdict::Satisfied: return ClaimVerdict::Satisfied;
        case Verdict::Violated: return ClaimVerdict::Violated;
        case Verdict::Indeterminate: return ClaimVerdict::Indeterminate;
    }
    return ClaimVerdict::Indeterminate;
}

json ClaimReport::to_json() const {
    json j;
    j["schema"] = kSchemaVersion;
    j["claim"] = id;
    j["anchor"] = {{"topic", anchor.topic}, {"statement", anchor.statement}};
    j["inputs"] = inputs;
    j["verdict"] = std::string(fractalc::to_string(verdict));
    j["expected"] = std::string(fractalc::to_string(expected));
    j["met"] = met();
    j["metrics"] = metrics;
    j["runtime_ms"] = runtime_ms;
    return j;
}

std::vector<double> seeded_points(std::uint64_t seed, int n, double lo, double hi) {
    std::mt19937_64 gen(seed);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(std::max(n, 0)));
    for (int i = 0; i < n; ++i) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        out.push_back(lo + (hi - lo) * u);
    }
    return out;
}

std::uint64_t seed_from_environment() {
    const char* raw = std::getenv("FRACTALC_SEED");
    if (raw == nullptr || *raw == '\0') return 42;
    const std::string s(raw);
    if (s.find_first_not_of("0123456789") != std::string::npos)
        throw ArgumentError("FRACTALC_SEED must be a decimal integer: " + s);
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw ArgumentError("FRACTALC_SEED out of range: " + s);
    }
}

namespace {

const FuncExpr kT = FuncExpr::monomial(1.0, 1.0);

json resolution_json(const Resolution& res) {
    return {{"nodes", res.nodes},
            {"oracle_nodes", res.oracle_nodes},
            {"ladder",
             {{"h0", res.ladder.h0},
              {"scales", res.ladder.scales},
              {"tolerance", res.ladder.tolerance},
              {"window_nodes", res.ladder.window_nodes}}}};
}

// Satisfied only if every part is; any Violated wins over Indeterminate.
ClaimVerdict combine(const std::vector<Verdict>& parts) {
    bool all_ok = true;
    for (Verdict v : parts) {
        if (v == Verdict::Violated) return ClaimVerdict::Violated;
        if (v != Verdict::Satisfied) all_ok = false;
    }
    return all_ok ? ClaimVerdict::Satisfied : ClaimVerdict::Indeterminate;
}

RationalMatrix compose(const RationalMatrix& a, const RationalMatrix& b) {
    const std::size_t m = a.size();
    RationalMatrix out = zero_matrix(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

ClaimReport oracle_agreement(const RunConfig& cfg) {
    const std::vector<double> gammas{0.5, 1.0, 2.0, 3.0};
    const std::vector<double> alphas{0.25, 0.5, 0.75};
    const std::vector<double> times{0.25, 0.5, 1.0};
    constexpr double kTol = 5e-3;
    double rl_vs_exact = 0.0, gl_vs_exact = 0.0, rl_vs_gl = 0.0;
    int cases = 0;
    for (double g : gammas) {
        const auto f = FuncExpr::monomial(1.0, g);
        for (double a : alphas) {
            const FracOrder alpha(a);
            for (double t : times) {
                const double exact = power_rule_oracle(g, alpha, t);
                const double rl = rl_derivative(f, alpha, 0.0, t, cfg.res.nodes);
                const double gl = gl_derivative(f, alpha, 0.0, t, cfg.res.oracle_nodes);
                rl_vs_exact = std::max(rl_vs_exact, std::abs(rl - exact));
                gl_vs_exact = std::max(gl_vs_exact, std::abs(gl - exact));
                rl_vs_gl = std::max(rl_vs_gl, std::abs(rl - gl));
                ++cases;
            }
        }
    }
    ClaimReport r;
    r.inputs = {{"gammas", gammas}, {"alphas", alphas}, {"t", times}, {"tolerance", kTol}};
    r.metrics = {{"cases", cases},
                 {"max_rl_vs_power_rule", rl_vs_exact},
                 {"max_gl_vs_power_rule", gl_vs_exact},
                 {"max_rl_vs_gl", rl_vs_gl}};
    r.verdict = std::max({rl_vs_exact, gl_vs_exact, rl_vs_gl}) <= kTol ? ClaimVerdict::Satisfied
                                                                      : ClaimVerdict::Violated;
    return r;
}

ClaimReport caputo_jumarie_identity(const RunConfig& cfg) {
    const std::vector<double> alphas{0.25, 0.5, 0.75};
    constexpr double kClosedTol = 1e-6;
    constexpr double kGridTol = 5e-3;
    const auto probes = default_probes();
    double closed_max = 0.0, grid_max = 0.0;
    std::vector<std::string> closed_ids, grid_ids;
    for (const auto& entry : absolutely_continuous_corpus()) {
        const bool c1 = try_derivative(entry.f).has_value();
        if (c1) closed_ids.push_back(entry.name);
        grid_ids.push_back(entry.name);
        for (double a : alphas) {
            const FracOrder alpha(a);
            if (c1) {
                const auto p = caputo_jumarie_gap(entry.f, alpha, probes, GapPath::ClosedForm, cfg.res);
                closed_max = std::max(closed_max, p.max_abs);
            }
            const auto p = caputo_jumarie_gap(entry.f, alpha, probes, GapPath::Grid, cfg.res);
            grid_max = std::max(grid_max, p.max_abs);
        }
    }
    ClaimReport r;
    r.inputs = {{"alphas", alphas},
                {"probes", probes},
                {"closed_form_corpus", closed_ids},
                {"grid_corpus", grid_ids},
                {"resolution", resolution_json(cfg.res)}};
    r.metrics = {{"max_gap_closed_form", closed_max},
                 {"max_gap_grid", grid_max},
                 {"closed_form_tolerance", kClosedTol},
                 {"grid_tolerance", kGridTol}};
    r.verdict = closed_max <= kClosedTol && grid_max <= kGridTol ? ClaimVerdict::Satisfied
                                                                 : ClaimVerdict::Violated;
    return r;
}

// Residual of the product rule at t = 1 for f = g = t, with a GL cross-check.
ClaimReport leibniz_falsification(const OperatorHandle& oper, const RunConfig& cfg) {
    const FracOrder half(0.5);
    const std::vector<double> at{1.0};
    const auto p = leibniz_residual(oper, kT, kT, at, cfg.res);
    const auto gl = leibniz_residual(op::GrunwaldLetnikov{half, 0.0}, kT, kT, at, cfg.res);
    // D(t^2) - 2 t D(t) at t = 1 from the power rule.
    const double analytic = power_rule_oracle(2.0, half, 1.0) - 2.0 * power_rule_oracle(1.0, half, 1.0);
    ClaimReport r;
    r.inputs = {{"f", kT.id()}, {"g", kT.id()}, {"alpha", 0.5}, {"t", 1.0},
                {"resolution", resolution_json(cfg.res)}};
    r.metrics = {{"profile", to_json(p)},
                 {"residual", p.residuals.at(0)},
                 {"power_rule_residual", analytic},
                 {"gl_residual", gl.residuals.at(0)}};
    r.verdict = to_claim_verdict(p.verdict);
    return r;
}

ClaimReport chain_falsification(const OperatorHandle& oper, const RunConfig& cfg) {
    const FracOrder half(0.5);
    const auto t2 = FuncExpr::monomial(1.0, 2.0);
    const std::vector<double> at{1.0};
    const auto p = chain_residual(oper, t2, t2, at, cfg.res);
    // D(t^4) - (D t^2)(1) * D(t^2)(1)
    const double d2 = power_rule_oracle(2.0, half, 1.0);
    const double analytic = power_rule_oracle(4.0, half, 1.0) - d2 * d2;
    ClaimReport r;
    r.inputs = {{"f", t2.id()}, {"g", t2.id()}, {"alpha", 0.5}, {"t", 1.0},
                {"resolution", resolution_json(cfg.res)}};
    r.metrics = {{"profile", to_json(p)},
                 {"residual", p.residuals.at(0)},
                 {"power_rule_residual", analytic}};
    r.verdict = to_claim_verdict(p.verdict);
    return r;
}

ClaimReport classical_laws(const RunConfig& cfg) {
    const auto polys = polynomial_corpus();
    const auto probes = default_probes();
    const OperatorHandle d = op::ClassicalDerivative{};
    std::vector<Verdict> verdicts;
    double worst = 0.0;
    for (const auto& f : polys)
        for (const auto& g : polys) {
            for (const auto& p : {linearity_residual(d, f, g, 2.0, -3.0, probes, cfg.res),
                                  leibniz_residual(d, f, g, probes, cfg.res),
                                  chain_residual(d, f, g, probes, cfg.res)}) {
                verdicts.push_back(p.verdict);
                worst = std::max(worst, p.max_abs);
            }
        }
    std::vector<std::string> ids;
    for (const auto& f : polys) ids.push_back(f.id());
    constexpr double kTol = 1e-10;
    ClaimReport r;
    r.inputs = {{"corpus", ids}, {"probes", probes}, {"laws", {"linearity", "leibniz", "chain"}}};
    r.metrics = {{"profiles", verdicts.size()}, {"max_abs_residual", worst}, {"tolerance", kTol}};
    r.verdict = combine(verdicts);
    if (r.verdict == ClaimVerdict::Satisfied && worst > kTol) r.verdict = ClaimVerdict::Violated;
    return r;
}

// Leibniz residual of an exact operator normalized by 1 + |T(fg)|, skipping
// probes where f or g is within 1e-6 of zero.
ClaimReport exact_leibniz(const std::vector<OperatorHandle>& ops, const std::vector<FuncExpr>& funcs,
                          const RunConfig& cfg) {
    constexpr double kTol = 1e-12;
    constexpr double kZeroCut = 1e-6;
    auto probes = default_probes();
    const auto extra = seeded_points(cfg.seed, 24, 0.05, 0.95);
    probes.insert(probes.end(), extra.begin(), extra.end());
    double worst = 0.0;
    int checked = 0, skipped = 0;
    std::vector<Verdict> verdicts;
    std::vector<std::string> op_names;
    for (const auto& o : ops) {
        op_names.push_back(describe(o));
        for (std::size_t i = 0; i < funcs.size(); ++i)
            for (std::size_t j = i; j < funcs.size(); ++j) {
                const auto& f = funcs[i];
                const auto& g = funcs[j];
                const auto p = leibniz_residual(o, f, g, probes, cfg.res);
                verdicts.push_back(p.verdict);
                const auto fg = f * g;
                for (std::size_t k = 0; k < probes.size(); ++k) {
                    const double t = probes[k];
                    if (std::abs(f(t)) < kZeroCut || std::abs(g(t)) < kZeroCut) {
                        ++skipped;
                        continue;
                    }
                    const double scale = 1.0 + std::abs(fractalc::apply(o, fg, t, cfg.res).value);
                    worst = std::max(worst, std::abs(p.residuals[k]) / scale);
                    ++checked;
                }
            }
    }
    std::vector<std::string> ids;
    for (const auto& f : funcs) ids.push_back(f.id());
    ClaimReport r;
    r.inputs = {{"operators", op_names}, {"corpus", ids}, {"probes", probes}, {"seed", cfg.seed}};
    r.metrics = {{"max_normalized_residual", worst},
                 {"tolerance", kTol},
                 {"probes_checked", checked},
                 {"probes_skipped_near_zero", skipped}};
    r.verdict = worst <= kTol ? combine(verdicts) : ClaimVerdict::Violated;
    return r;
}

ClaimReport entropy_leibniz(const RunConfig& cfg) {
    const std::vector<OperatorHandle> ops{op::Entropy{FuncExpr::constant(1.0)},
                                          op::Entropy{FuncExpr::constant(1.0) + kT}};
    const std::vector<FuncExpr> funcs{FuncExpr::constant(0.5) + kT, FuncExpr::exp(1.0),
                                      FuncExpr::cos(3.0),
                                      FuncExpr::monomial(1.0, 2.0) + FuncExpr::constant(-0.25),
                                      FuncExpr::constant(-1.0) + FuncExpr::monomial(-1.0, 1.0)};
    return exact_leibniz(ops, funcs, cfg);
}

ClaimReport konig_milman_leibniz(const RunConfig& cfg) {
    const std::vector<OperatorHandle> ops{
        op::KonigMilman{FuncExpr::constant(1.0), FuncExpr::constant(1.0)},
        op::KonigMilman{kT, FuncExpr::constant(1.0) + kT}};
    const std::vector<FuncExpr> funcs{FuncExpr::constant(0.5) + kT, FuncExpr::exp(1.0),
                                      FuncExpr::monomial(1.0, 2.0) + FuncExpr::constant(0.1),
                                      FuncExpr::constant(2.0) + FuncExpr::cos(3.0),
                                      FuncExpr::cos(3.0)};
    return exact_leibniz(ops, funcs, cfg);
}

ClaimReport entropy_linearity(const RunConfig& cfg) {
    const OperatorHandle t = op::Entropy{FuncExpr::constant(1.0)};
    const auto p = linearity_residual(t, FuncExpr::constant(2.0), FuncExpr::constant(3.0), 1.0, 1.0,
                                      {0.5}, cfg.res);
    const double analytic = 5.0 * std::log(5.0) - 2.0 * std::log(2.0) - 3.0 * std::log(3.0);
    ClaimReport r;
    r.inputs = {{"operator", describe(t)}, {"f", "const(2)"}, {"g", "const(3)"}, {"t", 0.5}};
    r.metrics = {{"profile", to_json(p)},
                 {"residual", p.residuals.at(0)},
                 {"closed_form_residual", analytic}};
    r.verdict = to_claim_verdict(p.verdict);
    return r;
}

ClaimReport rl_constant_nonzero(const RunConfig& cfg) {
    const FracOrder half(0.5);
    const std::vector<double> at{0.25, 0.5, 1.0};
    const auto p = constant_annihilation_check(op::RLDerivative{half, 0.0}, {1.0}, at, cfg.res);
    json analytic = json::array();
    for (double t : at) analytic.push_back(std::pow(t, -0.5) / gamma(0.5));
    ClaimReport r;
    r.inputs = {{"operator", describe(op::RLDerivative{half, 0.0})}, {"constant", 1.0}, {"t", at}};
    r.metrics = {{"profile", to_json(p)}, {"closed_form_values", analytic}};
    r.verdict = to_claim_verdict(p.verdict);
    return r;
}

ClaimReport constant_annihilation(const RunConfig& cfg) {
    const FracOrder half(0.5);
    const std::vector<OperatorHandle> ops{
        op::Caputo{half, 0.0},           op::Jumarie{half},
        op::BCLocal{half, Direction::Plus}, op::KGLocal{half, Direction::Plus},
        op::BCLocal{half, Direction::Minus}, op::KGLocal{half, Direction::Minus}};
    const std::vector<double> constants{-2.0, 1.0, 7.0};
    const auto probes = default_probes();
    std::vector<Verdict> verdicts;
    json profiles = json::array();
    for (const auto& o : ops) {
        const auto p = constant_annihilation_check(o, constants, probes, cfg.res);
        verdicts.push_back(p.verdict);
        profiles.push_back({{"operator", p.op},
                            {"max_abs", p.max_abs},
                            {"error_estimate", p.error_estimate},
                            {"verdict", std::string(to_string(p.verdict))}});
    }
    ClaimReport r;
    r.inputs = {{"constants", constants}, {"probes", probes}};
    r.metrics = {{"profiles", profiles}};
    r.verdict = combine(verdicts);
    return r;
}

ClaimReport obstruction_pointwise(const RunConfig&) {
    json rows = json::array();
    bool all_zero = true;
    for (int n = 2; n <= kMaxPointwiseSize; ++n) {
        const auto space = solve_derivation_space(FiniteAlgebra::pointwise(n));
        all_zero = all_zero && space.dimension() == 0;
        rows.push_back({{"n", n}, {"dimension", space.dimension()}, {"constraint_rank", space.constraint_rank}});
    }
    ClaimReport r;
    r.inputs = {{"algebra", "pointwise"}, {"n", {2, kMaxPointwiseSize}}};
    r.metrics = {{"spaces", rows}};
    r.verdict = all_zero ? ClaimVerdict::Satisfied : ClaimVerdict::Violated;
    return r;
}

ClaimReport cube_root_annihilation(const RunConfig&) {
    // Finite shadow: every derivation of R^4 kills a vector vanishing where
    // its cube root vanishes.
    const auto alg = FiniteAlgebra::pointwise(4);
    const auto space = solve_derivation_space(alg);
    const RationalVector v{0, 1, 2, 0};
    bool finite_ok = cube_root_annihilation_check(alg, zero_matrix(alg.dimension()), v);
    for (const auto& d : space.basis) finite_ok = finite_ok && cube_root_annihilation_check(alg, d, v);

    // Continuous side: g^3 = f with g vanishing exactly where f does.
    const std::vector<FuncExpr> closed{kT, FuncExpr::monomial(-2.0, 2.0), FuncExpr::exp(1.0),
                                       kT * FuncExpr::exp(-1.0), FuncExpr::constant(-8.0)};
    double closed_err = 0.0;
    bool zeros_ok = true;
    for (const auto& f : closed) {
        const auto g = cube_root_witness(f);
        for (int i = 0; i <= 100; ++i) {
            const double t = i / 100.0;
            const double fv = f(t), gv = g(t);
            closed_err = std::max(closed_err, std::abs(gv * gv * gv - fv) / (1.0 + std::abs(fv)));
            if ((fv == 0.0) != (gv == 0.0)) zeros_ok = false;
        }
    }
    const auto grid = sample(FuncExpr::cos(3.0), 0.0, 1.0, 257);
    const auto root = cube_root_witness(grid);
    double grid_err = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double fv = grid[i], gv = root[i];
        grid_err = std::max(grid_err, std::abs(gv * gv * gv - fv) / (1.0 + std::abs(fv)));
    }
    constexpr double kTol = 1e-12;
    ClaimReport r;
    r.inputs = {{"algebra", alg.descriptor()}, {"vector", {"0/1", "1/1", "2/1", "0/1"}},
                {"closed_form", {"t", "-2t^2", "exp(t)", "t*exp(-t)", "-8"}}, {"grid", "cos(3t)"}};
    r.metrics = {{"derivation_dimension", space.dimension()},
                 {"finite_annihilated", finite_ok},
                 {"closed_form_max_error", closed_err},
                 {"grid_max_error", grid_err},
                 {"zero_sets_match", zeros_ok}};
    r.verdict = finite_ok && zeros_ok && closed_err <= kTol && grid_err <= kTol
                    ? ClaimVerdict::Satisfied
                    : ClaimVerdict::Violated;
    return r;
}

ClaimReport rigidity_polynomial(const RunConfig&) {
    json rows = json::array();
    bool ok = true;
    for (int d = 2; d <= kMaxPolynomialDegree; ++d) {
        const auto alg = FiniteAlgebra::truncated_polynomial(d);
        const auto space = solve_derivation_space(alg);
        bool exact = true;
        for (const auto& f : factor_through_derivative(space)) exact = exact && f.exact();
        // Every x^k d/dx with k >= 1 is a derivation and must lie in the space.
        bool complete = true;
        const auto dx = formal_derivative(alg);
        for (int k = 1; k <= d; ++k) {
            RationalVector q(alg.dimension(), 0);
            q[static_cast<std::size_t>(k)] = 1;
            complete = complete && in_span(space, compose(multiplication_operator(alg, q), dx));
        }
        ok = ok && exact && complete;
        rows.push_back({{"d", d},
                        {"dimension", space.dimension()},
                        {"all_factor_exactly", exact},
                        {"contains_x^k_d/dx", complete}});
    }
    ClaimReport r;
    r.inputs = {{"algebra", "truncated-poly"}, {"d", {2, kMaxPolynomialDegree}}};
    r.metrics = {{"spaces", rows}};
    r.verdict = ok ? ClaimVerdict::Satisfied : ClaimVerdict::Violated;
    return r;
}

ClaimReport kg_bc_equivalence(const RunConfig& cfg) {
    constexpr double kTol = 1e-2;
    struct Probe {
        std::string name;
        FuncExpr f;
        double alpha;
        double y;
        Direction sigma;
        std::optional<double> closed;
    };
    // (1 - t)^{1/2}, probed from the left at its endpoint.
    const auto reflected = FuncExpr::compose(FuncExpr::monomial(1.0, 0.5),
                                             FuncExpr::constant(1.0) + FuncExpr::monomial(-1.0, 1.0));
    std::vector<Probe> probes{
        {"t^0.5", FuncExpr::monomial(1.0, 0.5), 0.5, 0.0, Direction::Plus, gamma(1.5)},
        {"t^0.25", FuncExpr::monomial(1.0, 0.25), 0.25, 0.0, Direction::Plus, gamma(1.25)},
        {"t^0.75", FuncExpr::monomial(1.0, 0.75), 0.75, 0.0, Direction::Plus, gamma(1.75)},
        {"(1-t)^0.5", reflected, 0.5, 1.0, Direction::Minus, -gamma(1.5)},
    };
    for (double y : seeded_points(cfg.seed, 4, 0.1, 0.9)) {
        probes.push_back({"t^0.8", FuncExpr::monomial(1.0, 0.8), 0.5, y, Direction::Plus, 0.0});
        probes.push_back({"exp(t)", FuncExpr::exp(1.0), 0.5, y, Direction::Minus, 0.0});
    }
    json rows = json::array();
    double worst = 0.0;
    bool required_ok = false;
    int both = 0;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const auto& p = probes[i];
        const auto rep = kg_bc_agreement(p.f, FracOrder(p.alpha), p.y, p.sigma, cfg.res.ladder);
        json row = {{"f", p.name},
                    {"alpha", p.alpha},
                    {"y", p.y},
                    {"sigma", to_string(p.sigma)},
                    {"kg", to_json(rep.kg.result)},
                    {"bc", to_json(rep.bc.result)}};
        if (p.closed) row["closed_form"] = *p.closed;
        if (rep.gap) {
            row["gap"] = *rep.gap;
            worst = std::max(worst, *rep.gap);
            ++both;
            if (i == 0) required_ok = true;
        }
        rows.push_back(std::move(row));
    }
    ClaimReport r;
    r.inputs = {{"tolerance", kTol}, {"seed", cfg.seed}, {"resolution", resolution_json(cfg.res)}};
    r.metrics = {{"probes", rows}, {"both_converged", both}, {"max_gap", worst}};
    if (worst > kTol)
        r.verdict = ClaimVerdict::Violated;
    else
        r.verdict = required_ok ? ClaimVerdict::Satisfied : ClaimVerdict::Indeterminate;
    return r;
}

ClaimReport kg_holder_triviality(const RunConfig& cfg) {
    const std::vector<std::pair<double, double>> cases{{0.8, 0.5}, {0.9, 0.5}, {0.6, 0.25}, {1.0, 0.5}};
    constexpr int kProbes = 64;
    constexpr double kTol = 1e-3;
    json rows = json::array();
    bool ok = true;
    for (auto [lambda, alpha] : cases) {
        const auto f = FuncExpr::monomial(1.0, lambda);
        const auto s = triviality_sweep(f, FracOrder(alpha), 0.1, 0.9, kProbes, kTol, cfg.res.ladder);
        double worst = 0.0;
        for (const auto& p : s.probes)
            if (p.result.status == LimitStatus::Converged)
                worst = std::max(worst, std::abs(p.result.value));
        ok = ok && s.fraction == 1.0;
        rows.push_back({{"lambda", lambda}, {"alpha", alpha}, {"fraction", s.fraction}, {"max_abs_estimate", worst}});
    }
    ClaimReport r;
    r.inputs = {{"range", {0.1, 0.9}}, {"probes_per_case", kProbes}, {"tolerance", kTol}};
    r.metrics = {{"sweeps", rows}};
    r.verdict = ok ? ClaimVerdict::Satisfied : ClaimVerdict::Violated;
    return r;
}

// Product rule for the local operators at points where every estimate converges.
ClaimReport local_leibniz(const RunConfig& cfg) {
    constexpr double kTol = 2e-2;
    const FracOrder half(0.5);
    const auto root = FuncExpr::monomial(1.0, 0.5);
    struct Case {
        FuncExpr f, g;
        double y;
    };
    const std::vector<Case> cases{{root, FuncExpr::constant(1.0) + kT, 0.0},
                                  {root, FuncExpr::exp(1.0), 0.0},
                                  {root, FuncExpr::cos(3.0), 0.0},
                                  {kT, FuncExpr::monomial(1.0, 2.0), 0.5}};
    json rows = json::array();
    double worst = 0.0;
    int usable = 0;
    for (LocalEstimator est : {LocalEstimator::BC, LocalEstimator::KG}) {
        auto run = [&](const FuncExpr& h, double y) {
            return est == LocalEstimator::BC ? bc_lfd(h, half, y, Direction::Plus, cfg.res.ladder)
                                             : kg_lfd(h, half, y, Direction::Plus, cfg.res.ladder);
        };
        for (const auto& c : cases) {
            const auto dfg = run(c.f * c.g, c.y);
            const auto df = run(c.f, c.y);
            const auto dg = run(c.g, c.y);
            json row = {{"estimator", est == LocalEstimator::BC ? "bc" : "kg"},
                        {"f", c.f.id()},
                        {"g", c.g.id()},
                        {"y", c.y}};
            const bool conv = dfg.result.status == LimitStatus::Converged &&
                              df.result.status == LimitStatus::Converged &&
                              dg.result.status == LimitStatus::Converged;
            if (conv) {
                const double res =
                    dfg.result.value - df.result.value * c.g(c.y) - c.f(c.y) * dg.result.value;
                row["residual"] = res;
                worst = std::max(worst, std::abs(res));
                ++usable;
            } else {
                row["residual"] = "not converged";
            }
            rows.push_back(std::move(row));
        }
    }
    ClaimReport r;
    r.inputs = {{"alpha", 0.5}, {"sigma", "+"}, {"tolerance", kTol}};
    r.metrics = {{"cases", rows}, {"converged_cases", usable}, {"max_abs_residual", worst}};
    if (worst > kTol)
        r.verdict = ClaimVerdict::Violated;
    else
        r.verdict = usable > 0 ? ClaimVerdict::Satisfied : ClaimVerdict::Indeterminate;
    return r;
}

ClaimReport weierstrass_nonconvergence(const RunConfig& cfg) {
    constexpr int kProbes = 32;
    constexpr double kRequired = 0.9;
    const auto w = FuncExpr::weierstrass(0.5, 2.0, 24);
    const FracOrder half(0.5);
    int divergent = 0, inconclusive = 0, converged = 0;
    std::vector<double> spreads;
    for (double y : seeded_points(cfg.seed, kProbes, 0.1, 0.9)) {
        const auto p = bc_lfd(w, half, y, Direction::Plus, cfg.res.ladder);
        switch (p.result.status) {
            case LimitStatus::Divergent: ++divergent; break;
            case LimitStatus::Inconclusive: ++inconclusive; break;
            case LimitStatus::Converged: ++converged; break;
        }
        spreads.push_back(final_spread(p));
    }
    std::sort(spreads.begin(), spreads.end());
    const double fraction = static_cast<double>(divergent + inconclusive) / kProbes;
    ClaimReport r;
    r.inputs = {{"function", w.id()}, {"alpha", 0.5}, {"probes", kProbes}, {"seed", cfg.seed}};
    r.metrics = {{"divergent", divergent},
                 {"inconclusive", inconclusive},
                 {"converged", converged},
                 {"non_converged_fraction", fraction},
                 {"required_fraction", kRequired},
                 {"median_final_spread", spreads[spreads.size() / 2]},
                 {"truncation_tail_bound", weierstrass_tail_bound(0.5, 2.0, 24)}};
    r.verdict = fraction >= kRequired ? ClaimVerdict::Divergent : ClaimVerdict::Indeterminate;
    return r;
}

ClaimReport kg_critical_exponent(const RunConfig& cfg) {
    const auto f = FuncExpr::monomial(1.0, 0.5);
    const FracOrder half(0.5);
    const auto s = triviality_sweep(f, half, 0.0, 0.9, 10, 1e-3, cfg.res.ladder);
    const auto at0 = kg_lfd(f, half, 0.0, Direction::Plus, cfg.res.ladder);
    ClaimReport r;
    r.inputs = {{"function", f.id()}, {"alpha", 0.5}, {"range", {0.0, 0.9}}, {"probes", 10}};
    r.metrics = {{"fraction", s.fraction},
                 {"kg_at_0", to_json(at0.result)},
                 {"closed_form_at_0", gamma(1.5)}};
    r.verdict = s.fraction == 1.0 ? ClaimVerdict::Satisfied : ClaimVerdict::Violated;
    return r;
}

std::vector<ClaimSpec> build_registry() {
    using V = ClaimVerdict;
    const FracOrder half(0.5);
    std::vector<ClaimSpec> reg;
    auto add = [&](std::string id, std::string topic, std::string statement, V expected,
                   std::function<ClaimReport(const RunConfig&)> fn) {
        reg.push_back({std::move(id), {std::move(topic), std::move(statement)}, expected, std::move(fn)});
    };
    add("oracle-agreement", "RL power rule",
        "D^alpha_{0+}[t^gamma](t) = Gamma(gamma+1)/Gamma(gamma+1-alpha) t^(gamma-alpha)", V::Satisfied,
        oracle_agreement);
    add("caputo-jumarie-identity", "Jumarie and Caputo coincide on absolutely continuous functions",
        "D_J^alpha[x] = cD^alpha_{0+}[x]", V::Satisfied, caputo_jumarie_identity);
    add("rl-leibniz", "RL derivative is not a derivation",
        "D^alpha(x y) = D^alpha(x) y + x D^alpha(y) fails", V::Violated,
        [half](const RunConfig& c) { return leibniz_falsification(op::RLDerivative{half, 0.0}, c); });
    add("jumarie-leibniz", "Jumarie derivative is not a derivation",
        "D_J^alpha(x y) = D_J^alpha(x) y + x D_J^alpha(y) fails", V::Violated,
        [half](const RunConfig& c) { return leibniz_falsification(op::Jumarie{half}, c); });
    add("rl-chain-rule", "RL derivative has no chain rule", "T(f o g) = (T f)(g) T(g) fails", V::Violated,
        [half](const RunConfig& c) { return chain_falsification(op::RLDerivative{half, 0.0}, c); });
    add("jumarie-chain-rule", "Jumarie derivative has no chain rule", "T(f o g) = (T f)(g) T(g) fails",
        V::Violated, [half](const RunConfig& c) { return chain_falsification(op::Jumarie{half}, c); });
    add("classical-derivative-laws", "classical derivative on polynomials",
        "T(f) = f' is linear, Leibniz and chain", V::Satisfied, classical_laws);
    add("entropy-leibniz", "entropy operators satisfy Leibniz", "T(f)(x) = d(x) f(x) ln abs(f(x))",
        V::Satisfied, entropy_leibniz);
    add("konig-milman-leibniz", "derivative plus entropy satisfies Leibniz",
        "T(f)(x) = c(x) f'(x) + d(x) f(x) ln abs(f(x))", V::Satisfied, konig_milman_leibniz);
    add("entropy-linearity", "entropy operators are not linear",
        "T(2 + 3) - T(2) - T(3) = 5 ln 5 - 2 ln 2 - 3 ln 3", V::Violated, entropy_linearity);
    add("rl-constant-nonzero", "RL derivative does not annihilate constants",
        "D^alpha_{a+}[c](t) = c (t-a)^(-alpha) / Gamma(1-alpha)", V::Violated, rl_constant_nonzero);
    add("constant-annihilation", "constants are annihilated by Caputo, Jumarie and local operators",
        "D(c) = c D(1) = 0", V::Satisfied, constant_annihilation);
    add("obstruction-pointwise", "no non-trivial derivations on continuous functions (finite model)",
        "Der(R^n) = 0", V::Satisfied, obstruction_pointwise);
    add("cube-root-annihilation", "cube root argument",
        "f = g^3, D(f) = 3 g^2 D(g) vanishes where f does", V::Satisfied, cube_root_annihilation);
    add("rigidity-polynomial", "derivations on polynomials are multiples of d/dx (finite model)",
        "D(P) = D(x) P'(x)", V::Satisfied, rigidity_polynomial);
    add("kg-bc-equivalence", "KG and BC local derivatives coincide",
        "D^alpha_{KG,sigma}[f](y) = D^alpha_{BC,sigma}[f](y)", V::Satisfied, kg_bc_equivalence);
    add("kg-holder-triviality", "local derivative vanishes on Hoelder functions above the order",
        "f in H^lambda, alpha < lambda => D^alpha_{KG,+}[f](x) = 0", V::Satisfied, kg_holder_triviality);
    add("kg-leibniz", "local derivatives satisfy Leibniz where defined",
        "D^alpha_{sigma}[f g](y) = D^alpha_{sigma}[f](y) g(y) + f(y) D^alpha_{sigma}[g](y)", V::Satisfied,
        local_leibniz);
    add("weierstrass-nonconvergence", "local derivative of the Weierstrass function does not exist",
        "W(x) = sum_n q^(-alpha n) cos(q^n x)", V::Divergent, weierstrass_nonconvergence);
    add("kg-critical-exponent", "triviality fails at lambda = alpha",
        "D^alpha_{KG,+}[t^alpha](0) = Gamma(1+alpha)", V::Violated, kg_critical_exponent);
    return reg;
}

}  // namespace

const std::vector<ClaimSpec>& claim_registry() {
    static const std::vector<ClaimSpec> reg = build_registry();
    return reg;
}

const ClaimSpec* find_claim(std::string_view id) {
    for (const auto& c : claim_registry())
        if (c.id == id) return &c;
    return nullptr;
}

ClaimReport run_claim(const ClaimSpec& spec, const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    ClaimReport r;
    try {
        r = spec.run(cfg);
    } catch (const std::exception& e) {
        r = ClaimReport{};
        r.verdict = ClaimVerdict::Indeterminate;
        r.metrics = {{"error", e.what()}};
    }
    r.id = spec.id;
    r.anchor = spec.anchor;
    r.expected = spec.expected;
    r.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<ClaimReport> run_claims(const std::vector<const ClaimSpec*>& specs, const RunConfig& cfg) {
    std::vector<ClaimReport> out(specs.size());
    const std::size_t workers =
        std::min<std::size_t>(specs.size(), std::max(1u, std::thread::hardware_concurrency()));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < specs.size(); i = next++) out[i] = run_claim(*specs[i], cfg);
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return out;
}

std::string claim_table() {
    std::ostringstream os;
    for (const auto& c : claim_registry()) {
        os << "  " << c.id;
        for (std::size_t i = c.id.size(); i < 28; ++i) os << ' ';
        os << to_string(c.expected);
        for (std::size_t i = to_string(c.expected).size(); i < 15; ++i) os << ' ';
        os << c.anchor.topic << '\n';
        os << "      " << c.anchor.statement << '\n';
    }
    return os.str();
}

}  // namespace fractalc
