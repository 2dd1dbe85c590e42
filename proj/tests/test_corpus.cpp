#include "doctest.h"

#include <cmath>
#include <sstream>

#include "fractalc/corpus.hpp"
#include "fractalc/errors.hpp"

using namespace fractalc;

TEST_CASE("atoms evaluate") {
    CHECK(FuncExpr::constant(2.5)(0.3) == 2.5);
    CHECK(FuncExpr::monomial(3.0, 2.0)(0.5) == doctest::Approx(0.75));
    CHECK(FuncExpr::monomial(1.0, 0.5)(0.0) == 0.0);
    CHECK(FuncExpr::exp(-2.0)(0.5) == doctest::Approx(std::exp(-1.0)));
    CHECK(FuncExpr::cos(3.0)(0.2) == doctest::Approx(std::cos(0.6)));
}

TEST_CASE("combinators evaluate") {
    const auto t = FuncExpr::monomial(1.0, 1.0);
    const auto e = FuncExpr::exp(1.0);
    CHECK((t + e)(0.4) == doctest::Approx(0.4 + std::exp(0.4)));
    CHECK((t * e)(0.4) == doctest::Approx(0.4 * std::exp(0.4)));
    CHECK((2.0 * e)(0.4) == doctest::Approx(2.0 * std::exp(0.4)));
    CHECK(FuncExpr::compose(FuncExpr::cos(1.0), FuncExpr::monomial(2.0, 2.0))(0.5) ==
          doctest::Approx(std::cos(0.5)));
    const auto shifted = FuncExpr::shift_by_value_at(FuncExpr::cos(3.0), 0.2);
    CHECK(shifted(0.2) == 0.0);
    CHECK(shifted(0.7) == doctest::Approx(std::cos(2.1) - std::cos(0.6)));
}

TEST_CASE("weierstrass sum includes terms 0..N") {
    const auto w = FuncExpr::weierstrass(0.5, 2.0, 5);
    double direct = 0.0;
    for (int n = 0; n <= 5; ++n) direct += std::pow(2.0, -0.5 * n) * std::cos(std::pow(2.0, n) * 0.3);
    CHECK(w(0.3) == doctest::Approx(direct).epsilon(1e-14));
    CHECK(fractal_floor(w) == doctest::Approx(std::pow(2.0, -5)));
    CHECK(fractal_floor(FuncExpr::exp(1.0)) == 0.0);
}

TEST_CASE("checked evaluation enforces the domain") {
    const auto f = FuncExpr::monomial(1.0, 0.5);
    CHECK_THROWS_AS(f(-0.1), DomainError);
    CHECK_THROWS_AS(f(1.5), DomainError);
    const auto g = f.with_domain({0.0, 4.0});
    CHECK(g(4.0) == doctest::Approx(2.0));
    CHECK(std::isnan(f.eval_unchecked(-1.0)));
}

TEST_CASE("hoelder metadata is structural") {
    CHECK(FuncExpr::exp(1.0).holder_exponent() == 1.0);
    CHECK(FuncExpr::monomial(1.0, 0.3).holder_exponent() == doctest::Approx(0.3));
    CHECK(FuncExpr::monomial(1.0, 2.0).holder_exponent() == 1.0);
    CHECK(FuncExpr::weierstrass(0.4).holder_exponent() == doctest::Approx(0.4));
    const auto s = FuncExpr::monomial(1.0, 0.3) + FuncExpr::monomial(1.0, 0.7);
    CHECK(s.holder_exponent() == doctest::Approx(0.3));
    const auto c = FuncExpr::compose(FuncExpr::monomial(1.0, 0.5), FuncExpr::monomial(1.0, 0.5));
    CHECK(c.holder_exponent() == doctest::Approx(0.25));
    CHECK(FuncExpr::exp(1.0).with_holder(0.9).holder_exponent() == 0.9);
}

TEST_CASE("ids are stable") {
    CHECK(FuncExpr::monomial(1.0, 0.5).id() == "monomial(1,0.5)");
    CHECK(FuncExpr::constant(3.0).id() == "const(3)");
}

TEST_CASE("symbolic derivatives agree with central differences") {
    const auto t = FuncExpr::monomial(1.0, 1.0);
    const std::vector<FuncExpr> fs{FuncExpr::monomial(2.0, 3.0), FuncExpr::exp(-1.5), FuncExpr::cos(3.0),
                                   t * FuncExpr::exp(-1.0), FuncExpr::monomial(1.0, 1.5),
                                   FuncExpr::compose(FuncExpr::cos(1.0), FuncExpr::monomial(1.0, 2.0)),
                                   FuncExpr::shift_by_value_at(FuncExpr::exp(2.0), 0.1)};
    for (const auto& f : fs) {
        const auto df = derivative(f);
        for (double x : {0.2, 0.5, 0.8}) {
            const double h = 1e-5;
            const double fd = (f(x + h) - f(x - h)) / (2 * h);
            INFO(f.id() << " at " << x);
            CHECK(df(x) == doctest::Approx(fd).epsilon(1e-7));
        }
    }
}

TEST_CASE("non-C1 expressions have no symbolic derivative") {
    CHECK_THROWS_AS(derivative(FuncExpr::monomial(1.0, 0.5)), UnsupportedVariant);
    CHECK_THROWS_AS(derivative(FuncExpr::weierstrass(0.5)), UnsupportedVariant);
    CHECK_FALSE(try_derivative(FuncExpr::monomial(1.0, 0.5)).has_value());
    CHECK(try_derivative(FuncExpr::exp(1.0)).has_value());
}

TEST_CASE("cube root witness cubes back") {
    const auto t = FuncExpr::monomial(1.0, 1.0);
    for (const auto& f : {FuncExpr::monomial(-8.0, 3.0), FuncExpr::exp(3.0), t * FuncExpr::exp(-1.0),
                          FuncExpr::constant(-27.0)}) {
        const auto g = cube_root_witness(f);
        for (double x : {0.0, 0.3, 1.0}) CHECK(std::pow(g(x), 3) == doctest::Approx(f(x)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(cube_root_witness(FuncExpr::cos(1.0) + t), UnsupportedVariant);
    const auto grid = cube_root_witness(sample(FuncExpr::cos(3.0), 0.0, 1.0, 11));
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(std::pow(grid[i], 3) == doctest::Approx(std::cos(3.0 * grid.node(i))).epsilon(1e-13));
}

TEST_CASE("grid functions sample, interpolate and serialize") {
    const auto g = sample(FuncExpr::monomial(1.0, 2.0), 0.0, 1.0, 5);
    CHECK(g.size() == 5);
    CHECK(g.spacing() == 0.25);
    CHECK(g.node(2) == 0.5);
    CHECK(g[2] == 0.25);
    CHECK(g.interpolate(0.125) == doctest::Approx(0.03125));
    CHECK_THROWS_AS(g.interpolate(1.1), DomainError);
    std::ostringstream os;
    g.write_csv(os);
    CHECK(os.str().rfind("t,value\n0,0\n0.25,0.0625\n", 0) == 0);
}

TEST_CASE("corpora") {
    const auto ac = absolutely_continuous_corpus();
    CHECK(ac.size() == 10);
    for (const auto& e : ac) CHECK(e.absolutely_continuous);
    const auto poly = polynomial_corpus();
    CHECK(poly.size() == 5);
    for (const auto& p : poly) {
        CHECK(p.domain().a == -2.0);
        CHECK(try_derivative(p).has_value());
    }
}
