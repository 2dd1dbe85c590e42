#include "fractalc/frac_ops.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "fractalc/errors.hpp"
#include "fractalc/numerics.hpp"

namespace fractalc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Binomial series threshold: for k >= 8 the expansions below converge fast
// and avoid the cancellation of the direct formulas.
constexpr std::size_t kSeriesFrom = 8;

double second_difference_power(double p, double k) {
    if (k < static_cast<double>(kSeriesFrom))
        return std::pow(k + 1.0, p) - 2.0 * std::pow(k, p) + std::pow(k - 1.0, p);
    // (1+u)^p + (1-u)^p - 2 = 2 sum_{m>=1} C(p,2m) u^{2m},  u = 1/k
    const double u2 = 1.0 / (k * k);
    double binom = 1.0;  // C(p, j)
    double upow = 1.0;
    double s = 0.0;
    for (int j = 1; j <= 60; ++j) {
        binom *= (p - j + 1.0) / j;
        if (j % 2 == 1) continue;
        upow *= u2;
        const double term = binom * upow;
        s += term;
        if (std::abs(term) <= 1e-18 * std::abs(s)) break;
    }
    return 2.0 * std::pow(k, p) * s;
}

// a_0 at node m: (m-1)^p - (m-1-beta) m^beta, p = beta + 1
double first_weight(double beta, std::size_t m) {
    const double p = beta + 1.0;
    const double mm = static_cast<double>(m);
    if (m < kSeriesFrom) return std::pow(mm - 1.0, p) - (mm - 1.0 - beta) * std::pow(mm, beta);
    // m^p [ (1-u)^p - 1 + p u ] = m^p sum_{j>=2} C(p,j) (-u)^j
    const double u = 1.0 / mm;
    double binom = p;  // C(p,1)
    double upow = -u;
    double s = 0.0;
    for (int j = 2; j <= 60; ++j) {
        binom *= (p - j + 1.0) / j;
        upow *= -u;
        const double term = binom * upow;
        s += term;
        if (std::abs(term) <= 1e-18 * std::abs(s)) break;
    }
    return std::pow(mm, p) * s;
}

// k^q - (k-1)^q
double first_difference_power(double q, double k) {
    if (k <= 1.0) return 1.0;
    return -std::pow(k, q) * std::expm1(q * std::log1p(-1.0 / k));
}

class WeightCache {
public:
    std::shared_ptr<const std::vector<double>> get(double beta, std::size_t count) {
        {
            std::shared_lock lock(mu_);
            auto it = tables_.find(beta);
            if (it != tables_.end() && it->second->size() > count) return it->second;
        }
        std::unique_lock lock(mu_);
        auto& slot = tables_[beta];
        if (slot && slot->size() > count) return slot;
        const std::size_t old = slot ? slot->size() : 1;
        auto grown = std::make_shared<std::vector<double>>();
        grown->reserve(count + 1);
        if (slot) *grown = *slot;
        else grown->push_back(0.0);
        const double p = beta + 1.0;
        for (std::size_t k = old; k <= count; ++k)
            grown->push_back(second_difference_power(p, static_cast<double>(k)));
        slot = std::move(grown);
        return slot;
    }

private:
    std::shared_mutex mu_;
    std::map<double, std::shared_ptr<const std::vector<double>>> tables_;
};

WeightCache& weight_cache() {
    static WeightCache cache;
    return cache;
}

void check_order(double beta, const char* what) {
    if (!(beta > 0.0 && beta < 1.0))
        throw DomainError(std::string(what) + ": order must lie in (0,1)");
}

void check_nodes(int nodes) {
    if (nodes < 8) throw ArgumentError("quadrature needs at least 8 cells");
}

std::vector<double> sample_from(const FuncExpr& f, double base, double h, std::size_t count,
                                double last_exact = std::nan("")) {
    std::vector<double> s(count);
    for (std::size_t i = 0; i < count; ++i) {
        double x = base + static_cast<double>(i) * h;
        if (i + 1 == count && !std::isnan(last_exact)) x = last_exact;
        s[i] = f.eval_unchecked(x);
        if (!std::isfinite(s[i]))
            throw DomainError(f.id() + " is not finite at t = " + std::to_string(x));
    }
    return s;
}

void check_range(const FuncExpr& f, double lo, double hi) {
    const Interval d = f.domain();
    const double slack = 1e-12 * (1.0 + std::abs(d.b - d.a));
    if (lo < d.a - slack || hi > d.b + slack)
        throw DomainError(f.id() + ": required range [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "] leaves its domain");
}

std::size_t grid_index(const GridFunction& g, double x, const char* what) {
    const double pos = (x - g.a()) / g.spacing();
    const double r = std::round(pos);
    if (std::abs(pos - r) > 1e-9 || r < 0 || r > static_cast<double>(g.size() - 1))
        throw ArgumentError(std::string(what) + " must coincide with a grid node");
    return static_cast<std::size_t>(r);
}

// Evaluates a nodal quantity at t by linear interpolation between the two
// bracketing nodes (or directly at a node).
template <class Nodal>
double interpolate_nodal(const GridFunction& g, double t, Nodal&& nodal) {
    if (t < g.a() || t > g.b()) throw DomainError("t outside grid interval");
    const double pos = (t - g.a()) / g.spacing();
    const double r = std::round(pos);
    if (std::abs(pos - r) <= 1e-9) return nodal(static_cast<std::size_t>(r));
    const auto k = static_cast<std::size_t>(std::floor(pos));
    const double w = pos - static_cast<double>(k);
    return (1.0 - w) * nodal(k) + w * nodal(k + 1);
}

}  // namespace

FracOrder::FracOrder(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("fractional order must lie strictly inside (0,1), got " +
                          std::to_string(alpha));
}

std::string to_string(Direction d) { return d == Direction::Plus ? "+" : "-"; }

namespace detail {

std::shared_ptr<const std::vector<double>> trapezoid_interior_weights(double beta, std::size_t count) {
    return weight_cache().get(beta, count);
}

double rl_integral_at_node(std::span<const double> f, double beta, double h, std::size_t m) {
    if (m == 0) return 0.0;
    if (m >= f.size()) throw ArgumentError("rl_integral_at_node: node index out of range");
    const auto table = trapezoid_interior_weights(beta, m);
    const auto& c = *table;
    double s = first_weight(beta, m) * f[0] + f[m];
    for (std::size_t j = 1; j < m; ++j) s += c[m - j] * f[j];
    return std::pow(h, beta) / gamma(beta + 2.0) * s;
}

double l1_caputo_at_node(std::span<const double> f, double alpha, double h, std::size_t m) {
    if (m == 0 || m >= f.size()) throw ArgumentError("l1_caputo_at_node: node index out of range");
    const double q = 1.0 - alpha;
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j)
        s += (f[j + 1] - f[j]) * first_difference_power(q, static_cast<double>(m - j));
    return std::pow(h, -alpha) / gamma(2.0 - alpha) * s;
}

double rl_derivative_at_node(std::span<const double> f, double alpha, double h, std::size_t m,
                             Stencil stencil) {
    const double beta = 1.0 - alpha;
    if (stencil == Stencil::Central) {
        if (m < 2 || m + 2 >= f.size()) throw DomainError("central stencil leaves the sampled range");
        return (rl_integral_at_node(f, beta, h, m + 2) - rl_integral_at_node(f, beta, h, m - 2)) /
               (4.0 * h);
    }
    if (m < 4 || m >= f.size()) throw DomainError("backward stencil needs four cells behind t");
    return (3.0 * rl_integral_at_node(f, beta, h, m) - 4.0 * rl_integral_at_node(f, beta, h, m - 2) +
            rl_integral_at_node(f, beta, h, m - 4)) /
           (4.0 * h);
}

}  // namespace detail

double rl_integral(const FuncExpr& f, double order, double base, double t, int nodes) {
    check_order(order, "rl_integral");
    check_nodes(nodes);
    if (t < base) throw DomainError("rl_integral: t lies below the base point");
    check_range(f, base, t);
    if (t == base) return 0.0;
    const auto n = static_cast<std::size_t>(nodes);
    const double h = (t - base) / nodes;
    const auto s = sample_from(f, base, h, n + 1, t);
    return detail::rl_integral_at_node(s, order, h, n);
}

double rl_integral(const GridFunction& f, double order, double base, double t) {
    check_order(order, "rl_integral");
    const std::size_t j0 = grid_index(f, base, "base point");
    if (t < base) throw DomainError("rl_integral: t lies below the base point");
    std::span<const double> s(f.samples());
    s = s.subspan(j0);
    return interpolate_nodal(f, t, [&](std::size_t k) {
        return detail::rl_integral_at_node(s, order, f.spacing(), k - j0);
    });
}

double rl_derivative(const FuncExpr& f, FracOrder alpha, double base, double t, int nodes) {
    check_nodes(nodes);
    if (!(t > base)) throw DomainError("rl_derivative: t must lie strictly above the base point");
    const auto n = static_cast<std::size_t>(nodes);
    const double h = (t - base) / nodes;
    const Interval d = f.domain();
    const bool central = t + 2.0 * h <= d.b;
    check_range(f, base, central ? t + 2.0 * h : t);
    const auto s = central ? sample_from(f, base, h, n + 3) : sample_from(f, base, h, n + 1, t);
    return detail::rl_derivative_at_node(s, alpha.value(), h, n,
                                         central ? Stencil::Central : Stencil::Backward);
}

double rl_derivative(const GridFunction& f, FracOrder alpha, double base, double t) {
    const std::size_t j0 = grid_index(f, base, "base point");
    if (!(t > base)) throw DomainError("rl_derivative: t must lie strictly above the base point");
    std::span<const double> s(f.samples());
    s = s.subspan(j0);
    return interpolate_nodal(f, t, [&](std::size_t k) {
        const std::size_t m = k - j0;
        const bool central = m >= 2 && k + 2 < f.size();
        if (!central && m < 4)
            throw DomainError("rl_derivative: grid too coarse this close to the base point");
        return detail::rl_derivative_at_node(s, alpha.value(), f.spacing(), m,
                                             central ? Stencil::Central : Stencil::Backward);
    });
}

double caputo(const FuncExpr& f, FracOrder alpha, double base, double t, int nodes) {
    if (!(t > base)) throw DomainError("caputo: t must lie strictly above the base point");
    if (auto df = try_derivative(f)) return rl_integral(*df, 1.0 - alpha.value(), base, t, nodes);
    return rl_derivative(FuncExpr::shift_by_value_at(f, base), alpha, base, t, nodes);
}

double caputo(const GridFunction& f, FracOrder alpha, double base, double t) {
    const std::size_t j0 = grid_index(f, base, "base point");
    if (!(t > base)) throw DomainError("caputo: t must lie strictly above the base point");
    std::span<const double> s(f.samples());
    s = s.subspan(j0);
    return interpolate_nodal(f, t, [&](std::size_t k) {
        return detail::l1_caputo_at_node(s, alpha.value(), f.spacing(), k - j0);
    });
}

double jumarie(const FuncExpr& f, FracOrder alpha, double t, int nodes) {
    if (!f.domain().contains(0.0)) throw DomainError("jumarie: f must be defined at 0");
    if (!(t > 0.0)) throw DomainError("jumarie: t must be positive");
    return rl_derivative(FuncExpr::shift_by_value_at(f, 0.0), alpha, 0.0, t, nodes);
}

double jumarie(const GridFunction& f, FracOrder alpha, double t) {
    const std::size_t j0 = grid_index(f, 0.0, "the origin");
    std::vector<double> shifted(f.samples());
    const double f0 = shifted[j0];
    for (double& v : shifted) v -= f0;
    return rl_derivative(GridFunction(f.a(), f.b(), std::move(shifted)), alpha, 0.0, t);
}

double gl_derivative(const FuncExpr& f, FracOrder alpha, double base, double t, int n) {
    if (n < 8) throw ArgumentError("gl_derivative: need at least 8 nodes");
    if (!(t > base)) throw DomainError("gl_derivative: t must lie strictly above the base point");
    check_range(f, base, t);
    const double a = alpha.value();
    const double h = (t - base) / n;
    double w = 1.0;
    double s = f.eval_unchecked(t);
    for (int k = 1; k <= n; ++k) {
        w *= 1.0 - (a + 1.0) / k;
        const double x = (k == n) ? base : t - k * h;
        s += w * f.eval_unchecked(x);
    }
    return std::pow(h, -a) * s;
}

double power_rule_oracle(double g, FracOrder alpha, double t) {
    const double a = alpha.value();
    if (!(g >= 0.0) || !(g + 1.0 - a > 0.0))
        throw DomainError("power_rule_oracle: need gamma >= 0 and gamma + 1 - alpha > 0");
    if (!(t > 0.0)) throw DomainError("power_rule_oracle: t must be positive");
    return gamma(g + 1.0) / gamma(g + 1.0 - a) * std::pow(t, g - a);
}

std::string describe(const OperatorHandle& op) {
    auto n = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", v);
        return std::string(buf);
    };
    return std::visit(
        overloaded{
            [](const op::ClassicalDerivative&) { return std::string("classical-derivative"); },
            [&](const op::RLIntegral& o) {
                return "rl-integral(" + n(o.order.value()) + ",base=" + n(o.base) + ")";
            },
            [&](const op::RLDerivative& o) {
                return "rl-derivative(" + n(o.alpha.value()) + ",base=" + n(o.base) + ")";
            },
            [&](const op::Caputo& o) {
                return "caputo(" + n(o.alpha.value()) + ",base=" + n(o.base) + ")";
            },
            [&](const op::Jumarie& o) { return "jumarie(" + n(o.alpha.value()) + ")"; },
            [&](const op::GrunwaldLetnikov& o) {
                return "grunwald-letnikov(" + n(o.alpha.value()) + ",base=" + n(o.base) + ")";
            },
            [&](const op::BCLocal& o) {
                return "bc-local(" + n(o.alpha.value()) + "," + to_string(o.sigma) + ")";
            },
            [&](const op::KGLocal& o) {
                return "kg-local(" + n(o.alpha.value()) + "," + to_string(o.sigma) + ")";
            },
            [](const op::Entropy& o) { return "entropy(d=" + o.d.id() + ")"; },
            [](const op::KonigMilman& o) {
                return "konig-milman(c=" + o.c.id() + ",d=" + o.d.id() + ")";
            },
        },
        op);
}

}  // namespace fractalc
