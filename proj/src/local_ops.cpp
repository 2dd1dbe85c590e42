#include "fractalc/local_ops.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "fractalc/errors.hpp"

namespace fractalc {

namespace {

LocalProbe make_probe(double y, Direction sigma, FracOrder alpha, std::vector<double> ladder) {
    LocalProbe p;
    p.y = y;
    p.sigma = sigma;
    p.alpha = alpha.value();
    p.ladder = std::move(ladder);
    return p;
}

void finish(LocalProbe& p, double tol) {
    std::vector<LimitSample> s;
    s.reserve(p.ladder.size());
    for (std::size_t i = 0; i < p.ladder.size(); ++i) s.push_back({p.ladder[i], p.raw[i]});
    p.result = extrapolate_limit(s, tol);
}

void put(std::ostream& os, double v) {
    char buf[64];
    auto e = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17).ptr;
    os.write(buf, e - buf);
}

}  // namespace

double weierstrass_tail_bound(double alpha, double q, int terms) {
    return std::pow(q, -alpha * (terms + 1)) / (1.0 - std::pow(q, -alpha));
}

std::vector<double> local_ladder(const FuncExpr& f, double y, Direction sigma,
                                 const LadderOptions& opt) {
    if (opt.scales < 4) throw ArgumentError("local_ladder: at least 4 scales are required");
    const Interval d = f.domain();
    if (!d.contains(y)) throw DomainError("local probe point lies outside the domain");
    const double room = sigma == Direction::Plus ? d.b - y : y - d.a;
    if (!(room > 0.0)) throw DomainError("local probe point has no room on the requested side");
    const double floor = 16.0 * fractal_floor(f);

    std::vector<double> h;
    for (int k = 0; k < opt.scales; ++k) {
        const double hk = std::ldexp(opt.h0, -k);
        if (hk <= room && hk > floor) h.push_back(hk);
    }
    // Near the boundary the coarse scales drop out; refine past the nominal
    // end so that four scales remain.
    double next = h.empty() ? opt.h0 : h.back() / 2.0;
    while (next > room) next /= 2.0;
    while (h.size() < 4) {
        h.push_back(next);
        next /= 2.0;
    }
    return h;
}

LocalProbe bc_lfd(const FuncExpr& f, FracOrder alpha, double y, Direction sigma,
                  const LadderOptions& opt) {
    LocalProbe p = make_probe(y, sigma, alpha, local_ladder(f, y, sigma, opt));
    const double a = alpha.value();
    const double s = sign(sigma);
    const double fy = f(y);
    const double scale = gamma(1.0 + a);
    for (double h : p.ladder) {
        const double diff = f.eval_unchecked(y + s * h) - fy;
        p.raw.push_back(scale * s * diff / std::pow(h, a));
    }
    finish(p, opt.tolerance);
    return p;
}

LocalProbe kg_lfd(const FuncExpr& f, FracOrder alpha, double y, Direction sigma,
                  const LadderOptions& opt) {
    if (opt.window_nodes < 8) throw ArgumentError("kg_lfd: window needs at least 8 cells");
    LocalProbe p = make_probe(y, sigma, alpha, local_ladder(f, y, sigma, opt));
    const double s = sign(sigma);
    const double fy = f(y);
    const auto n = static_cast<std::size_t>(opt.window_nodes);
    std::vector<double> g(n + 1);
    for (double h : p.ladder) {
        const double dv = h / static_cast<double>(n);
        for (std::size_t i = 0; i <= n; ++i) {
            const double v = (i == n) ? h : static_cast<double>(i) * dv;
            g[i] = s * (f.eval_unchecked(y + s * v) - fy);
        }
        p.raw.push_back(detail::rl_derivative_at_node(g, alpha.value(), dv, n, Stencil::Backward));
    }
    finish(p, opt.tolerance);
    return p;
}

AgreementReport kg_bc_agreement(const FuncExpr& f, FracOrder alpha, double y, Direction sigma,
                                const LadderOptions& opt) {
    AgreementReport r{kg_lfd(f, alpha, y, sigma, opt), bc_lfd(f, alpha, y, sigma, opt), std::nullopt,
                      {}};
    const bool both = r.kg.result.status == LimitStatus::Converged &&
                      r.bc.result.status == LimitStatus::Converged;
    if (both) r.gap = std::abs(r.kg.result.value - r.bc.result.value);
    else
        r.note = "no common limit: kg " + std::string(to_string(r.kg.result.status)) + ", bc " +
                 std::string(to_string(r.bc.result.status));
    if (const auto* w = std::get_if<expr::WeierstrassTruncated>(&f.node())) {
        if (!r.note.empty()) r.note += "; ";
        r.note += "truncated Weierstrass sum, sup-norm tail bound " +
                  std::to_string(weierstrass_tail_bound(w->alpha, w->q, w->terms));
    }
    return r;
}

SweepResult triviality_sweep(const FuncExpr& f, FracOrder alpha, double lo, double hi, int m,
                             double tol, const LadderOptions& opt, LocalEstimator estimator) {
    const auto lambda = f.holder_exponent();
    if (!lambda) throw ArgumentError("triviality_sweep: f carries no declared Hoelder exponent");
    if (*lambda < alpha.value())
        throw ArgumentError("triviality_sweep: declared Hoelder exponent is below alpha");
    if (m < 1 || hi < lo) throw ArgumentError("triviality_sweep: need m >= 1 and lo <= hi");

    SweepResult out;
    out.tol = tol;
    int hits = 0;
    for (int i = 0; i < m; ++i) {
        const double y = m == 1 ? lo : lo + (hi - lo) * i / (m - 1);
        LocalProbe p = estimator == LocalEstimator::KG ? kg_lfd(f, alpha, y, Direction::Plus, opt)
                                                        : bc_lfd(f, alpha, y, Direction::Plus, opt);
        if (p.result.status == LimitStatus::Converged && std::abs(p.result.value) <= tol) ++hits;
        out.probes.push_back(std::move(p));
    }
    out.fraction = static_cast<double>(hits) / m;
    return out;
}

double final_spread(const LocalProbe& p) {
    const std::size_t n = p.raw.size();
    if (n < 3) return 0.0;
    const auto [lo, hi] = std::minmax({p.raw[n - 1], p.raw[n - 2], p.raw[n - 3]});
    return hi - lo;
}

void SweepResult::write_csv(std::ostream& os) const {
    os << "y,estimate,status,error_bar\n";
    for (const auto& p : probes) {
        put(os, p.y);
        os << ',';
        put(os, p.result.value);
        os << ',' << to_string(p.result.status) << ',';
        put(os, p.result.error_bar);
        os << '\n';
    }
}

}  // namespace fractalc
