#include "fractalc/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fractalc/errors.hpp"

namespace fractalc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();

double rounding(double magnitude) {
    return 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(magnitude));
}

// Runs a resolution-dependent scheme at n and 2n.
template <class Scheme>
Evaluation refine(Scheme&& at, int n) {
    const double coarse = at(n);
    const double fine = at(2 * n);
    return {coarse, 2.0 * std::abs(fine - coarse) + rounding(coarse)};
}

Evaluation local_evaluation(const LocalProbe& p) {
    if (p.result.status != LimitStatus::Converged) return {p.result.value, kInf};
    return {p.result.value, 2.0 * p.result.error_bar + rounding(p.result.value)};
}

// |c| * e, except that an unbounded error stays unbounded even when c = 0.
double weighted(double c, double e) { return std::isinf(e) ? e : std::abs(c) * e; }

// Running maximum that lets NaN and infinity through.
void widen(double& acc, double e) {
    if (std::isnan(e) || e > acc) acc = e;
}

ResidualProfile finish(ResidualProfile p, double err) {
    p.max_abs = 0.0;
    for (double r : p.residuals) widen(p.max_abs, std::abs(r));
    p.error_estimate = err;
    p.verdict = classify(p.max_abs, err);
    return p;
}

}  // namespace

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Satisfied: return "Satisfied";
        case Verdict::Violated: return "Violated";
        case Verdict::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

Verdict classify(double max_abs, double error_estimate) {
    if (!std::isfinite(error_estimate) || !std::isfinite(max_abs)) return Verdict::Indeterminate;
    if (max_abs > kViolationFactor * error_estimate) return Verdict::Violated;
    if (max_abs <= error_estimate) return Verdict::Satisfied;
    return Verdict::Indeterminate;
}

double entropy_kernel(double u) { return u == 0.0 ? 0.0 : u * std::log(std::abs(u)); }

Evaluation apply(const OperatorHandle& op, const FuncExpr& f, double t, const Resolution& res) {
    return std::visit(
        overloaded{
            [&](const op::ClassicalDerivative&) -> Evaluation {
                const double v = derivative(f)(t);
                return {v, rounding(v)};
            },
            [&](const op::RLIntegral& o) {
                return refine([&](int n) { return rl_integral(f, o.order.value(), o.base, t, n); },
                              res.nodes);
            },
            [&](const op::RLDerivative& o) {
                return refine([&](int n) { return rl_derivative(f, o.alpha, o.base, t, n); },
                              res.nodes);
            },
            [&](const op::Caputo& o) {
                return refine([&](int n) { return caputo(f, o.alpha, o.base, t, n); }, res.nodes);
            },
            [&](const op::Jumarie& o) {
                return refine([&](int n) { return jumarie(f, o.alpha, t, n); }, res.nodes);
            },
            [&](const op::GrunwaldLetnikov& o) {
                return refine([&](int n) { return gl_derivative(f, o.alpha, o.base, t, n); },
                              res.oracle_nodes);
            },
            [&](const op::BCLocal& o) {
                return local_evaluation(bc_lfd(f, o.alpha, t, o.sigma, res.ladder));
            },
            [&](const op::KGLocal& o) -> Evaluation {
                LadderOptions fine = res.ladder;
                fine.window_nodes *= 2;
                const auto coarse = local_evaluation(kg_lfd(f, o.alpha, t, o.sigma, res.ladder));
                const auto refined = local_evaluation(kg_lfd(f, o.alpha, t, o.sigma, fine));
                if (!std::isfinite(coarse.error) || !std::isfinite(refined.error))
                    return {coarse.value, kInf};
                return {coarse.value, coarse.error + 2.0 * std::abs(refined.value - coarse.value)};
            },
            [&](const op::Entropy& o) -> Evaluation {
                const double v = o.d(t) * entropy_kernel(f(t));
                return {v, rounding(v)};
            },
            [&](const op::KonigMilman& o) -> Evaluation {
                const double v = o.c(t) * derivative(f)(t) + o.d(t) * entropy_kernel(f(t));
                return {v, rounding(v)};
            },
        },
        op);
}

std::vector<double> default_probes() {
    std::vector<double> p(8);
    for (int i = 0; i < 8; ++i) p[static_cast<std::size_t>(i)] = 0.1 + 0.8 * i / 7.0;
    return p;
}

ResidualProfile leibniz_residual(const OperatorHandle& op, const FuncExpr& f, const FuncExpr& g,
                                 const std::vector<double>& probes, const Resolution& res) {
    ResidualProfile p{"leibniz", describe(op), {f.id(), g.id()}, probes, {}, 0, 0, {}};
    const FuncExpr fg = f * g;
    double err = 0.0;
    for (double t : probes) {
        const auto d_fg = fractalc::apply(op, fg, t, res);
        const auto d_f = fractalc::apply(op, f, t, res);
        const auto d_g = fractalc::apply(op, g, t, res);
        const double ft = f(t), gt = g(t);
        p.residuals.push_back(d_fg.value - d_f.value * gt - ft * d_g.value);
        const double e = d_fg.error + weighted(gt, d_f.error) + weighted(ft, d_g.error) +
                         rounding(std::abs(d_fg.value) + std::abs(d_f.value * gt) +
                                  std::abs(ft * d_g.value));
        widen(err, e);
    }
    return finish(std::move(p), err);
}

ResidualProfile chain_residual(const OperatorHandle& op, const FuncExpr& f, const FuncExpr& g,
                               const std::vector<double>& probes, const Resolution& res) {
    ResidualProfile p{"chain", describe(op), {f.id(), g.id()}, probes, {}, 0, 0, {}};
    const FuncExpr fog = FuncExpr::compose(f, g);
    double err = 0.0;
    for (double t : probes) {
        const auto d_fog = fractalc::apply(op, fog, t, res);
        const auto d_f = fractalc::apply(op, f, g(t), res);
        const auto d_g = fractalc::apply(op, g, t, res);
        p.residuals.push_back(d_fog.value - d_f.value * d_g.value);
        const double e = d_fog.error + weighted(d_g.value, d_f.error) +
                         weighted(d_f.value, d_g.error) +
                         rounding(std::abs(d_fog.value) + std::abs(d_f.value * d_g.value));
        widen(err, e);
    }
    return finish(std::move(p), err);
}

ResidualProfile linearity_residual(const OperatorHandle& op, const FuncExpr& f, const FuncExpr& g,
                                   double lambda, double mu, const std::vector<double>& probes,
                                   const Resolution& res) {
    ResidualProfile p{"linearity", describe(op), {f.id(), g.id()}, probes, {}, 0, 0, {}};
    const FuncExpr combo = lambda * f + mu * g;
    double err = 0.0;
    for (double t : probes) {
        const auto d_c = fractalc::apply(op, combo, t, res);
        const auto d_f = fractalc::apply(op, f, t, res);
        const auto d_g = fractalc::apply(op, g, t, res);
        p.residuals.push_back(d_c.value - lambda * d_f.value - mu * d_g.value);
        const double e = d_c.error + weighted(lambda, d_f.error) + weighted(mu, d_g.error) +
                         rounding(std::abs(d_c.value) + std::abs(lambda * d_f.value) +
                                  std::abs(mu * d_g.value));
        widen(err, e);
    }
    return finish(std::move(p), err);
}

GridFunction entropy_operator(const FuncExpr& d, const FuncExpr& f, int n) {
    const Interval dom = f.domain();
    return entropy_operator(d, sample(f, dom.a, dom.b, n));
}

GridFunction entropy_operator(const FuncExpr& d, const GridFunction& f) {
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        out[i] = d.eval_unchecked(f.node(i)) * entropy_kernel(f[i]);
    return GridFunction(f.a(), f.b(), std::move(out));
}

GridFunction konig_milman_operator(const FuncExpr& c, const FuncExpr& d, const FuncExpr& f, int n) {
    const FuncExpr df = derivative(f);
    const Interval dom = f.domain();
    const GridFunction fs = sample(f, dom.a, dom.b, n);
    std::vector<double> out(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const double x = fs.node(i);
        out[i] = c.eval_unchecked(x) * df.eval_unchecked(x) + d.eval_unchecked(x) * entropy_kernel(fs[i]);
    }
    return GridFunction(dom.a, dom.b, std::move(out));
}

ResidualProfile caputo_jumarie_gap(const FuncExpr& f, FracOrder alpha,
                                   const std::vector<double>& probes, GapPath path,
                                   const Resolution& res) {
    ResidualProfile p{path == GapPath::ClosedForm ? "caputo-jumarie-gap" : "caputo-jumarie-gap-grid",
                      describe(op::Jumarie{alpha}) + " - caputo", {f.id()}, probes,
                      {}, 0, 0, {}};
    const Interval dom = f.domain();
    if (!dom.contains(0.0)) throw DomainError("caputo_jumarie_gap: f must be defined at 0");

    auto gap_at = [&](int n) {
        std::vector<std::pair<double, double>> jc;
        if (path == GapPath::ClosedForm) {
            for (double t : probes) jc.emplace_back(jumarie(f, alpha, t, n), caputo(f, alpha, 0.0, t, n));
        } else {
            const GridFunction g = sample(f, 0.0, dom.b, n + 1);
            for (double t : probes) jc.emplace_back(jumarie(g, alpha, t), caputo(g, alpha, 0.0, t));
        }
        return jc;
    };
    const auto coarse = gap_at(res.nodes);
    const auto fine = gap_at(2 * res.nodes);
    double err = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const auto [j, c] = coarse[i];
        const auto [jf, cf] = fine[i];
        p.residuals.push_back(j - c);
        const double e = 2.0 * (std::abs(jf - j) + std::abs(cf - c)) + rounding(std::abs(j) + std::abs(c));
        widen(err, e);
    }
    return finish(std::move(p), err);
}

ResidualProfile constant_annihilation_check(const OperatorHandle& op,
                                            const std::vector<double>& constants,
                                            const std::vector<double>& probes,
                                            const Resolution& res) {
    ResidualProfile p{"constant-annihilation", describe(op), {}, {}, {}, 0, 0, {}};
    double err = 0.0;
    for (double c : constants) {
        const FuncExpr k = FuncExpr::constant(c);
        p.corpus_ids.push_back(k.id());
        for (double t : probes) {
            const auto e = fractalc::apply(op, k, t, res);
            p.probes.push_back(t);
            p.residuals.push_back(e.value);
            widen(err, e.error);
        }
    }
    return finish(std::move(p), err);
}

}  // namespace fractalc
