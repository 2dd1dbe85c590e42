#include "doctest.h"

#include <cmath>
#include <random>

#include "fractalc/algebra.hpp"
#include "fractalc/corpus.hpp"
#include "fractalc/errors.hpp"

using namespace fractalc;

namespace {

const FuncExpr t = FuncExpr::monomial(1.0, 1.0);
const FracOrder half(0.5);

// Small random closed-form functions for property checks.
FuncExpr random_function(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    switch (gen() % 4) {
        case 0: return FuncExpr::monomial(u(gen), static_cast<double>(gen() % 4));
        case 1: return FuncExpr::exp(u(gen));
        case 2: return FuncExpr::cos(u(gen)) + FuncExpr::constant(u(gen));
        default: return FuncExpr::constant(u(gen)) + FuncExpr::monomial(u(gen), 2.0);
    }
}

}  // namespace

TEST_CASE("verdict classification") {
    CHECK(classify(0.5, 1.0) == Verdict::Satisfied);
    CHECK(classify(1.0, 1.0) == Verdict::Satisfied);
    CHECK(classify(5.0, 1.0) == Verdict::Indeterminate);
    CHECK(classify(10.0, 1.0) == Verdict::Indeterminate);
    CHECK(classify(10.5, 1.0) == Verdict::Violated);
    CHECK(classify(0.0, std::numeric_limits<double>::infinity()) == Verdict::Indeterminate);
    CHECK(to_string(Verdict::Violated) == "Violated");
}

TEST_CASE("Leibniz fails for RL and Jumarie on f = g = t") {
    for (const OperatorHandle& o : {OperatorHandle{op::RLDerivative{half, 0.0}}, OperatorHandle{op::Jumarie{half}}}) {
        const auto p = leibniz_residual(o, t, t, {1.0});
        CHECK(p.verdict == Verdict::Violated);
        CHECK(p.residuals.at(0) == doctest::Approx(-0.75225277806367504926).epsilon(1e-5));
        CHECK(p.property == "leibniz");
    }
    const auto gl = leibniz_residual(op::GrunwaldLetnikov{half, 0.0}, t, t, {1.0});
    CHECK(gl.residuals.at(0) == doctest::Approx(-0.752253).epsilon(5e-3));
}

TEST_CASE("chain rule fails for RL on f = g = t^2") {
    const auto t2 = FuncExpr::monomial(1.0, 2.0);
    const auto p = chain_residual(op::RLDerivative{half, 0.0}, t2, t2, {1.0});
    CHECK(p.verdict == Verdict::Violated);
    CHECK(p.residuals.at(0) == doctest::Approx(-0.20021506287198686248).epsilon(1e-4));
}

TEST_CASE("fractional operators are linear") {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 6; ++trial) {
        const auto f = random_function(gen);
        const auto g = random_function(gen);
        for (const OperatorHandle& o : {OperatorHandle{op::RLDerivative{half, 0.0}},
                                        OperatorHandle{op::Caputo{half, 0.0}}, OperatorHandle{op::Jumarie{half}},
                                        OperatorHandle{op::RLIntegral{half, 0.0}}}) {
            const auto p = linearity_residual(o, f, g, 1.5, -0.25, {0.3, 0.9});
            INFO(describe(o) << " on " << f.id() << ", " << g.id());
            CHECK(p.verdict == Verdict::Satisfied);
        }
    }
}

TEST_CASE("classical derivative laws hold on random polynomials") {
    const auto poly = polynomial_corpus();
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto& f = poly[gen() % poly.size()];
        const auto& g = poly[gen() % poly.size()];
        const OperatorHandle d = op::ClassicalDerivative{};
        CHECK(leibniz_residual(d, f, g, default_probes()).max_abs <= 1e-10);
        CHECK(chain_residual(d, f, g, default_probes()).max_abs <= 1e-10);
        CHECK(linearity_residual(d, f, g, 2.0, 3.0, default_probes()).verdict == Verdict::Satisfied);
    }
}

TEST_CASE("entropy operators: Leibniz holds, linearity fails") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        const OperatorHandle e = op::Entropy{FuncExpr::constant(u(gen)) + FuncExpr::monomial(u(gen), 1.0)};
        const auto f = random_function(gen);
        const auto g = random_function(gen);
        const auto p = leibniz_residual(e, f, g, default_probes());
        INFO(f.id() << " * " << g.id());
        CHECK(p.verdict == Verdict::Satisfied);
    }
    const auto lin = linearity_residual(op::Entropy{FuncExpr::constant(1.0)}, FuncExpr::constant(2.0),
                                        FuncExpr::constant(3.0), 1.0, 1.0, {0.5});
    CHECK(lin.verdict == Verdict::Violated);
    CHECK(lin.residuals.at(0) == doctest::Approx(3.36505833504628218).epsilon(1e-14));
}

TEST_CASE("Koenig-Milman operators satisfy Leibniz") {
    const OperatorHandle km = op::KonigMilman{t, FuncExpr::constant(2.0)};
    const auto p = leibniz_residual(km, FuncExpr::exp(1.0), FuncExpr::cos(3.0) + FuncExpr::constant(2.0),
                                    default_probes());
    CHECK(p.verdict == Verdict::Satisfied);
    CHECK(p.max_abs < 1e-12);
}

TEST_CASE("entropy kernel and grid operators") {
    CHECK(entropy_kernel(0.0) == 0.0);
    CHECK(entropy_kernel(-2.0) == doctest::Approx(-2.0 * std::log(2.0)));
    const auto g = entropy_operator(FuncExpr::constant(2.0), FuncExpr::exp(1.0), 11);
    CHECK(g.size() == 11);
    CHECK(g[10] == doctest::Approx(2.0 * std::exp(1.0)));
    const auto from_grid = entropy_operator(FuncExpr::constant(2.0), sample(FuncExpr::exp(1.0), 0.0, 1.0, 11));
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(from_grid[i] == doctest::Approx(g[i]));
    const auto km = konig_milman_operator(FuncExpr::constant(1.0), FuncExpr::constant(0.0), t * t, 5);
    CHECK(km[4] == doctest::Approx(2.0));
    CHECK_THROWS_AS(konig_milman_operator(FuncExpr::constant(1.0), FuncExpr::constant(0.0),
                                          FuncExpr::monomial(1.0, 0.5)),
                    UnsupportedVariant);
}

TEST_CASE("Caputo and Jumarie agree on absolutely continuous inputs") {
    for (const auto& e : absolutely_continuous_corpus()) {
        const auto grid = caputo_jumarie_gap(e.f, half, default_probes(), GapPath::Grid);
        INFO(e.name);
        CHECK(grid.max_abs <= 5e-3);
        if (try_derivative(e.f)) {
            const auto closed = caputo_jumarie_gap(e.f, half, default_probes(), GapPath::ClosedForm);
            CHECK(closed.max_abs <= 1e-6);
        }
    }
    CHECK_THROWS_AS(caputo_jumarie_gap(t.with_domain({0.5, 1.0}), half, {0.7}), DomainError);
}

TEST_CASE("constant annihilation") {
    const std::vector<double> cs{-2.0, 1.0, 7.0};
    for (const OperatorHandle& o :
         {OperatorHandle{op::Caputo{half, 0.0}}, OperatorHandle{op::Jumarie{half}},
          OperatorHandle{op::BCLocal{half, Direction::Plus}}, OperatorHandle{op::KGLocal{half, Direction::Minus}}}) {
        INFO(describe(o));
        CHECK(constant_annihilation_check(o, cs, default_probes()).verdict == Verdict::Satisfied);
    }
    const auto rl = constant_annihilation_check(op::RLDerivative{half, 0.0}, {1.0}, {0.5});
    CHECK(rl.verdict == Verdict::Violated);
    CHECK(rl.residuals.size() == 1);
}

TEST_CASE("local operators have finite error only when converged") {
    const auto ok = apply(op::BCLocal{half, Direction::Plus}, FuncExpr::monomial(1.0, 0.5), 0.0);
    CHECK(std::isfinite(ok.error));
    const auto bad = apply(op::BCLocal{half, Direction::Plus}, FuncExpr::monomial(1.0, 0.25), 0.0);
    CHECK(std::isinf(bad.error));
    const auto p = leibniz_residual(op::BCLocal{half, Direction::Plus}, FuncExpr::monomial(1.0, 0.25), t, {0.0});
    CHECK(p.verdict == Verdict::Indeterminate);
}
