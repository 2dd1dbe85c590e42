#include "fractalc/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>

#include "fractalc/errors.hpp"

namespace fractalc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string num(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, end);
}

bool is_integer(double x) { return std::floor(x) == x; }

double monomial_value(double coef, double gamma, double t) {
    if (gamma == 0.0) return coef;
    if (t < 0.0 && !is_integer(gamma)) return std::numeric_limits<double>::quiet_NaN();
    if (gamma == 1.0) return coef * t;
    if (gamma == 2.0) return coef * t * t;
    return coef * std::pow(t, gamma);
}

Interval intersect(Interval x, Interval y) { return {std::max(x.a, y.a), std::min(x.b, y.b)}; }

std::optional<double> min_holder(const std::vector<FuncExpr>& fs) {
    std::optional<double> out;
    for (const auto& f : fs) {
        auto h = f.holder_exponent();
        if (!h) return std::nullopt;
        out = out ? std::min(*out, *h) : *h;
    }
    return out;
}

}  // namespace

FuncExpr::FuncExpr(expr::Node node, std::optional<double> holder)
    : node_(std::make_shared<const expr::Node>(std::move(node))), holder_(holder) {}

FuncExpr FuncExpr::constant(double c) { return FuncExpr(expr::Constant{c}, 1.0); }

FuncExpr FuncExpr::monomial(double coef, double exponent) {
    if (!(exponent >= 0.0) || !std::isfinite(exponent))
        throw ArgumentError("monomial exponent must be finite and >= 0");
    const double lambda = (exponent > 0.0 && exponent < 1.0) ? exponent : 1.0;
    return FuncExpr(expr::Monomial{coef, exponent}, lambda);
}

FuncExpr FuncExpr::exp(double rate) { return FuncExpr(expr::Exp{rate}, 1.0); }

FuncExpr FuncExpr::cos(double freq) { return FuncExpr(expr::Cos{freq}, 1.0); }

FuncExpr FuncExpr::weierstrass(double alpha, double q, int terms) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("weierstrass: alpha must lie in (0,1)");
    if (!(q > 1.0)) throw ArgumentError("weierstrass: q must exceed 1");
    if (terms < 1) throw ArgumentError("weierstrass: truncation index must be >= 1");
    return FuncExpr(expr::WeierstrassTruncated{alpha, q, terms}, alpha);
}

FuncExpr FuncExpr::sum(std::vector<FuncExpr> terms) {
    if (terms.empty()) return constant(0.0);
    Interval d = terms.front().domain();
    for (const auto& t : terms) d = intersect(d, t.domain());
    auto h = min_holder(terms);
    FuncExpr out(expr::Sum{std::move(terms)}, h);
    out.domain_ = d;
    return out;
}

FuncExpr FuncExpr::product(const FuncExpr& f, const FuncExpr& g) {
    FuncExpr out(expr::Product{{f, g}}, min_holder({f, g}));
    out.domain_ = intersect(f.domain(), g.domain());
    return out;
}

FuncExpr FuncExpr::compose(const FuncExpr& outer, const FuncExpr& inner) {
    std::optional<double> h;
    if (outer.holder_exponent() && inner.holder_exponent())
        h = *outer.holder_exponent() * *inner.holder_exponent();
    FuncExpr out(expr::Compose{{outer, inner}}, h);
    out.domain_ = inner.domain();
    return out;
}

FuncExpr FuncExpr::shift_by_value_at(const FuncExpr& inner, double base) {
    FuncExpr out(expr::ShiftByValueAt{{inner}, base}, inner.holder_exponent());
    out.domain_ = inner.domain();
    return out;
}

FuncExpr FuncExpr::with_domain(Interval d) const {
    if (!(d.b > d.a)) throw ArgumentError("domain must satisfy b > a");
    FuncExpr out = *this;
    out.domain_ = d;
    return out;
}

FuncExpr FuncExpr::with_holder(double lambda) const {
    if (!(lambda > 0.0 && lambda <= 1.0)) throw ArgumentError("Hoelder exponent must lie in (0,1]");
    FuncExpr out = *this;
    out.holder_ = lambda;
    return out;
}

double FuncExpr::operator()(double t) const {
    if (!domain_.contains(t))
        throw DomainError("eval: t = " + num(t) + " outside [" + num(domain_.a) + ", " +
                          num(domain_.b) + "] for " + id());
    const double v = eval_unchecked(t);
    if (std::isnan(v)) throw DomainError("eval: " + id() + " undefined at t = " + num(t));
    return v;
}

double FuncExpr::eval_unchecked(double t) const {
    return std::visit(
        overloaded{
            [](const expr::Constant& n) { return n.c; },
            [t](const expr::Monomial& n) { return monomial_value(n.coef, n.exponent, t); },
            [t](const expr::Exp& n) { return std::exp(n.rate * t); },
            [t](const expr::Cos& n) { return std::cos(n.freq * t); },
            [t](const expr::Sum& n) {
                double s = 0.0;
                for (const auto& f : n.terms) s += f.eval_unchecked(t);
                return s;
            },
            [t](const expr::Product& n) {
                return n.factors[0].eval_unchecked(t) * n.factors[1].eval_unchecked(t);
            },
            [t](const expr::Compose& n) {
                return n.parts[0].eval_unchecked(n.parts[1].eval_unchecked(t));
            },
            [t](const expr::ShiftByValueAt& n) {
                return n.inner[0].eval_unchecked(t) - n.inner[0].eval_unchecked(n.base);
            },
            [t](const expr::WeierstrassTruncated& n) {
                double s = 0.0;
                for (int k = 0; k <= n.terms; ++k) {
                    const double qk = std::pow(n.q, k);
                    s += std::pow(n.q, -n.alpha * k) * std::cos(qk * t);
                }
                return s;
            },
        },
        *node_);
}

std::string FuncExpr::id() const {
    return std::visit(
        overloaded{
            [](const expr::Constant& n) { return "const(" + num(n.c) + ")"; },
            [](const expr::Monomial& n) {
                return "monomial(" + num(n.coef) + "," + num(n.exponent) + ")";
            },
            [](const expr::Exp& n) { return "exp(" + num(n.rate) + ")"; },
            [](const expr::Cos& n) { return "cos(" + num(n.freq) + ")"; },
            [](const expr::Sum& n) {
                std::string s = "sum(";
                for (std::size_t i = 0; i < n.terms.size(); ++i)
                    s += (i ? "," : "") + n.terms[i].id();
                return s + ")";
            },
            [](const expr::Product& n) {
                return "product(" + n.factors[0].id() + "," + n.factors[1].id() + ")";
            },
            [](const expr::Compose& n) {
                return "compose(" + n.parts[0].id() + "," + n.parts[1].id() + ")";
            },
            [](const expr::ShiftByValueAt& n) {
                return "shift(" + n.inner[0].id() + "@" + num(n.base) + ")";
            },
            [](const expr::WeierstrassTruncated& n) {
                return "weierstrass(" + num(n.alpha) + "," + num(n.q) + "," +
                       std::to_string(n.terms) + ")";
            },
        },
        *node_);
}

FuncExpr operator+(const FuncExpr& f, const FuncExpr& g) { return FuncExpr::sum({f, g}); }
FuncExpr operator*(const FuncExpr& f, const FuncExpr& g) { return FuncExpr::product(f, g); }
FuncExpr operator*(double s, const FuncExpr& f) {
    return FuncExpr::product(FuncExpr::constant(s).with_domain(f.domain()), f);
}

FuncExpr derivative(const FuncExpr& f) {
    const Interval dom = f.domain();
    auto c = [dom](double v) { return FuncExpr::constant(v).with_domain(dom); };
    FuncExpr out = std::visit(
        overloaded{
            [&](const expr::Constant&) { return c(0.0); },
            [&](const expr::Monomial& n) -> FuncExpr {
                if (n.exponent == 0.0) return c(0.0);
                if (n.exponent < 1.0)
                    throw UnsupportedVariant("derivative: " + f.id() + " is not C^1 at 0");
                return FuncExpr::monomial(n.coef * n.exponent, n.exponent - 1.0);
            },
            [&](const expr::Exp& n) { return c(n.rate) * FuncExpr::exp(n.rate); },
            [&](const expr::Cos& n) {
                // -w sin(w t) = -w cos(w t - pi/2)
                const FuncExpr phase = FuncExpr::monomial(n.freq, 1.0) + c(-std::numbers::pi / 2);
                return c(-n.freq) * FuncExpr::compose(FuncExpr::cos(1.0), phase);
            },
            [&](const expr::Sum& n) {
                std::vector<FuncExpr> d;
                for (const auto& t : n.terms) d.push_back(derivative(t));
                return FuncExpr::sum(std::move(d));
            },
            [&](const expr::Product& n) {
                const auto& u = n.factors[0];
                const auto& v = n.factors[1];
                return derivative(u) * v + u * derivative(v);
            },
            [&](const expr::Compose& n) {
                const auto& outer = n.parts[0];
                const auto& inner = n.parts[1];
                return FuncExpr::compose(derivative(outer), inner) * derivative(inner);
            },
            [&](const expr::ShiftByValueAt& n) { return derivative(n.inner[0]); },
            [&](const expr::WeierstrassTruncated&) -> FuncExpr {
                throw UnsupportedVariant("derivative: no closed form kept for " + f.id());
            },
        },
        f.node());
    return out.with_domain(dom);
}

std::optional<FuncExpr> try_derivative(const FuncExpr& f) {
    try {
        return derivative(f);
    } catch (const UnsupportedVariant&) {
        return std::nullopt;
    }
}

double fractal_floor(const FuncExpr& f) {
    return std::visit(
        overloaded{
            [](const expr::WeierstrassTruncated& n) { return std::pow(n.q, -n.terms); },
            [](const expr::Sum& n) {
                double m = 0.0;
                for (const auto& t : n.terms) m = std::max(m, fractal_floor(t));
                return m;
            },
            [](const expr::Product& n) {
                return std::max(fractal_floor(n.factors[0]), fractal_floor(n.factors[1]));
            },
            [](const expr::Compose& n) {
                return std::max(fractal_floor(n.parts[0]), fractal_floor(n.parts[1]));
            },
            [](const expr::ShiftByValueAt& n) { return fractal_floor(n.inner[0]); },
            [](const auto&) { return 0.0; },
        },
        f.node());
}

FuncExpr cube_root_witness(const FuncExpr& f) {
    FuncExpr g = std::visit(
        overloaded{
            [](const expr::Constant& n) { return FuncExpr::constant(std::cbrt(n.c)); },
            [](const expr::Monomial& n) {
                return FuncExpr::monomial(std::cbrt(n.coef), n.exponent / 3.0);
            },
            [](const expr::Exp& n) { return FuncExpr::exp(n.rate / 3.0); },
            [](const expr::Product& n) {
                return cube_root_witness(n.factors[0]) * cube_root_witness(n.factors[1]);
            },
            [](const expr::Compose& n) {
                return FuncExpr::compose(cube_root_witness(n.parts[0]), n.parts[1]);
            },
            [&f](const auto&) -> FuncExpr {
                throw UnsupportedVariant("cube_root_witness: no closed-form root for " + f.id());
            },
        },
        f.node());
    return g.with_domain(f.domain());
}

GridFunction::GridFunction(double a, double b, std::vector<double> samples)
    : a_(a), b_(b), samples_(std::move(samples)) {
    if (!(b_ > a_)) throw ArgumentError("GridFunction: need b > a");
    if (samples_.size() < 2) throw ArgumentError("GridFunction: need at least 2 nodes");
    for (double v : samples_)
        if (!std::isfinite(v)) throw ArgumentError("GridFunction: samples must be finite");
}

double GridFunction::node(std::size_t i) const {
    if (i + 1 == samples_.size()) return b_;
    return a_ + static_cast<double>(i) * spacing();
}

double GridFunction::interpolate(double t) const {
    if (t < a_ || t > b_) throw DomainError("GridFunction: t outside grid interval");
    const double x = (t - a_) / spacing();
    auto i = static_cast<std::size_t>(std::floor(x));
    if (i + 1 >= samples_.size()) return samples_.back();
    const double w = x - static_cast<double>(i);
    return (1.0 - w) * samples_[i] + w * samples_[i + 1];
}

void GridFunction::write_csv(std::ostream& os) const {
    char buf[64];
    os << "t,value\n";
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        auto e1 = std::to_chars(buf, buf + sizeof buf, node(i), std::chars_format::general, 17).ptr;
        os.write(buf, e1 - buf);
        os << ',';
        auto e2 = std::to_chars(buf, buf + sizeof buf, samples_[i], std::chars_format::general, 17).ptr;
        os.write(buf, e2 - buf);
        os << '\n';
    }
}

GridFunction sample(const FuncExpr& f, double a, double b, int n) {
    if (!(b > a)) throw ArgumentError("sample: need b > a");
    if (n < 2) throw ArgumentError("sample: need n >= 2");
    std::vector<double> v(static_cast<std::size_t>(n));
    const double h = (b - a) / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double t = (i == n - 1) ? b : a + i * h;
        v[static_cast<std::size_t>(i)] = f(t);
    }
    return GridFunction(a, b, std::move(v));
}

GridFunction cube_root_witness(const GridFunction& f) {
    std::vector<double> g(f.samples());
    for (double& v : g) v = std::cbrt(v);
    return GridFunction(f.a(), f.b(), std::move(g));
}

std::vector<CorpusEntry> absolutely_continuous_corpus() {
    const auto t = FuncExpr::monomial(1.0, 1.0);
    return {
        {"t", t, true},
        {"t^2", FuncExpr::monomial(1.0, 2.0), true},
        {"t^3", FuncExpr::monomial(1.0, 3.0), true},
        {"t^1.5", FuncExpr::monomial(1.0, 1.5), true},
        {"5+t", FuncExpr::constant(5.0) + t, true},
        {"exp(t)", FuncExpr::exp(1.0), true},
        {"cos(3t)", FuncExpr::cos(3.0), true},
        {"t*exp(-t)", t * FuncExpr::exp(-1.0), true},
        {"t^0.5", FuncExpr::monomial(1.0, 0.5), true},
        {"t^0.75", FuncExpr::monomial(1.0, 0.75), true},
    };
}

std::vector<FuncExpr> polynomial_corpus() {
    // Polynomials are entire; [-2, 2] leaves room for compositions whose inner
    // values leave [0, 1].
    const Interval wide{-2.0, 2.0};
    std::vector<FuncExpr> out{
        FuncExpr::constant(1.0),
        FuncExpr::monomial(1.0, 1.0),
        FuncExpr::monomial(1.0, 2.0),
        FuncExpr::monomial(-2.0, 3.0) + FuncExpr::monomial(0.5, 1.0),
        FuncExpr::constant(0.5) + FuncExpr::monomial(1.0, 4.0),
    };
    for (auto& p : out) p = p.with_domain(wide);
    return out;
}

}  // namespace fractalc
