#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fractalc {

struct Interval {
    double a = 0.0;
    double b = 1.0;
    bool contains(double t) const { return t >= a && t <= b; }
};

class FuncExpr;

namespace expr {

struct Constant {
    double c;
};
/// coef * t^exponent, exponent >= 0.
struct Monomial {
    double coef;
    double exponent;
};
/// e^{rate t}
struct Exp {
    double rate;
};
/// cos(freq t)
struct Cos {
    double freq;
};
struct Sum {
    std::vector<FuncExpr> terms;
};
struct Product {
    std::vector<FuncExpr> factors;  // exactly two
};
/// outer(inner(t))
struct Compose {
    std::vector<FuncExpr> parts;  // {outer, inner}
};
/// inner(t) - inner(base)
struct ShiftByValueAt {
    std::vector<FuncExpr> inner;  // exactly one
    double base;
};
/// sum_{n=0}^{terms} q^{-alpha n} cos(q^n t)
struct WeierstrassTruncated {
    double alpha;
    double q;
    int terms;
};

using Node = std::variant<Constant, Monomial, Exp, Cos, Sum, Product, Compose, ShiftByValueAt,
                          WeierstrassTruncated>;

}  // namespace expr

/// Immutable closed-form function descriptor. Copies share the expression
/// tree. Carries a domain (default [0, 1]) and an optional declared Hoelder
/// exponent; the library never estimates the exponent from data.
class FuncExpr {
public:
    static FuncExpr constant(double c);
    static FuncExpr monomial(double coef, double exponent);
    static FuncExpr exp(double rate);
    static FuncExpr cos(double freq);
    static FuncExpr weierstrass(double alpha, double q = 2.0, int terms = 24);
    static FuncExpr sum(std::vector<FuncExpr> terms);
    static FuncExpr product(const FuncExpr& f, const FuncExpr& g);
    static FuncExpr compose(const FuncExpr& outer, const FuncExpr& inner);
    static FuncExpr shift_by_value_at(const FuncExpr& inner, double base);

    /// Checked evaluation: throws DomainError outside domain().
    double operator()(double t) const;
    /// Structural evaluation without the domain check (used inside
    /// quadrature, compositions and ladders that already validated ranges).
    double eval_unchecked(double t) const;

    const expr::Node& node() const { return *node_; }
    Interval domain() const { return domain_; }
    std::optional<double> holder_exponent() const { return holder_; }

    FuncExpr with_domain(Interval d) const;
    FuncExpr with_holder(double lambda) const;

    /// Stable textual id, e.g. "monomial(1,0.5)".
    std::string id() const;

private:
    explicit FuncExpr(expr::Node node, std::optional<double> holder);

    std::shared_ptr<const expr::Node> node_;
    Interval domain_{};
    std::optional<double> holder_;
};

FuncExpr operator+(const FuncExpr& f, const FuncExpr& g);
FuncExpr operator*(const FuncExpr& f, const FuncExpr& g);
FuncExpr operator*(double s, const FuncExpr& f);

inline double eval(const FuncExpr& f, double t) { return f(t); }

/// Symbolic derivative. Throws UnsupportedVariant for expressions that are not
/// C^1 on their domain in closed form (fractional monomials with 0 < gamma < 1,
/// truncated Weierstrass sums).
FuncExpr derivative(const FuncExpr& f);
std::optional<FuncExpr> try_derivative(const FuncExpr& f);

/// Smallest oscillation scale q^{-N} over all truncated Weierstrass nodes in
/// the tree, or 0 if none.
double fractal_floor(const FuncExpr& f);

/// Signed cube root g with g^3 = f, closed form. Handles constants,
/// monomials, exponentials, products and compositions; other variants throw
/// UnsupportedVariant (use the grid overload instead).
FuncExpr cube_root_witness(const FuncExpr& f);

/// Uniform samples on [a, b]: t_i = a + i (b - a) / (n - 1).
class GridFunction {
public:
    GridFunction(double a, double b, std::vector<double> samples);

    double a() const { return a_; }
    double b() const { return b_; }
    std::size_t size() const { return samples_.size(); }
    double spacing() const { return (b_ - a_) / static_cast<double>(samples_.size() - 1); }
    double node(std::size_t i) const;
    const std::vector<double>& samples() const { return samples_; }
    double operator[](std::size_t i) const { return samples_[i]; }

    /// Piecewise-linear interpolant; throws DomainError outside [a, b].
    double interpolate(double t) const;

    /// CSV with header "t,value" and 17 significant digits.
    void write_csv(std::ostream& os) const;

private:
    double a_;
    double b_;
    std::vector<double> samples_;
};

GridFunction sample(const FuncExpr& f, double a, double b, int n);

/// Nodewise signed cube root.
GridFunction cube_root_witness(const GridFunction& f);

/// Named corpus members used by the claim suites and tests.
struct CorpusEntry {
    std::string name;
    FuncExpr f;
    bool absolutely_continuous;
};

/// Absolutely continuous members on [0, 1]. Members with a closed-form
/// derivative are C^1; the fractional monomials are AC but not C^1.
std::vector<CorpusEntry> absolutely_continuous_corpus();

/// Polynomials with exact symbolic derivatives, on [-2, 2].
std::vector<FuncExpr> polynomial_corpus();

}  // namespace fractalc
