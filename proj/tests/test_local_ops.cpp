#include "doctest.h"

#include <cmath>
#include <sstream>

#include "fractalc/corpus.hpp"
#include "fractalc/errors.hpp"
#include "fractalc/local_ops.hpp"
#include "fractalc/numerics.hpp"

using namespace fractalc;

namespace {
const FuncExpr root = FuncExpr::monomial(1.0, 0.5);
// (1 - t)^{1/2}
const FuncExpr reflected =
    FuncExpr::compose(root, FuncExpr::constant(1.0) + FuncExpr::monomial(-1.0, 1.0));
}  // namespace

TEST_CASE("ladder respects the domain and keeps four scales") {
    const auto h = local_ladder(FuncExpr::exp(1.0), 0.5, Direction::Plus);
    CHECK(h.size() == 10);
    CHECK(h.front() == 0.05);
    const auto edge = local_ladder(FuncExpr::exp(1.0), 0.99, Direction::Plus);
    CHECK(edge.size() >= 4);
    for (double v : edge) CHECK(v <= 0.01 + 1e-15);
    for (std::size_t i = 1; i < edge.size(); ++i) CHECK(edge[i] == edge[i - 1] / 2);
    CHECK_THROWS_AS(local_ladder(FuncExpr::exp(1.0), 1.0, Direction::Plus), DomainError);
    CHECK_THROWS_AS(local_ladder(FuncExpr::exp(1.0), 0.0, Direction::Minus), DomainError);
    CHECK_THROWS_AS(local_ladder(FuncExpr::exp(1.0), 1.5, Direction::Minus), DomainError);
    CHECK_THROWS_AS(local_ladder(FuncExpr::exp(1.0), 0.5, Direction::Plus, {0.05, 3}), ArgumentError);
}

TEST_CASE("ladder stops above the Weierstrass oscillation floor") {
    const auto w = FuncExpr::weierstrass(0.5, 2.0, 14);
    const auto h = local_ladder(w, 0.3, Direction::Plus);
    CHECK(h.size() == 6);
    for (double v : h) CHECK(v > 16.0 * std::pow(2.0, -14));
    // With a coarse truncation four scales are kept regardless.
    CHECK(local_ladder(FuncExpr::weierstrass(0.5, 2.0, 6), 0.3, Direction::Plus).size() == 4);
}

TEST_CASE("t^alpha at 0 has local derivative Gamma(1+alpha)") {
    for (double a : {0.25, 0.5, 0.75}) {
        const auto f = FuncExpr::monomial(1.0, a);
        const auto bc = bc_lfd(f, FracOrder(a), 0.0, Direction::Plus);
        const auto kg = kg_lfd(f, FracOrder(a), 0.0, Direction::Plus);
        INFO("alpha " << a);
        CHECK(bc.result.status == LimitStatus::Converged);
        CHECK(bc.result.value == doctest::Approx(fractalc::gamma(1 + a)).epsilon(1e-12));
        CHECK(kg.result.status == LimitStatus::Converged);
        CHECK(kg.result.value == doctest::Approx(fractalc::gamma(1 + a)).epsilon(1e-3));
    }
}

TEST_CASE("left-sided probe at the right endpoint") {
    const FracOrder half(0.5);
    const auto rep = kg_bc_agreement(reflected, half, 1.0, Direction::Minus);
    REQUIRE(rep.gap.has_value());
    CHECK(rep.bc.result.value == doctest::Approx(-fractalc::gamma(1.5)).epsilon(1e-10));
    CHECK(*rep.gap < 1e-2);
}

TEST_CASE("smooth functions have zero local derivative below order one") {
    const FracOrder half(0.5);
    for (double y : {0.2, 0.5, 0.8})
        for (Direction s : {Direction::Plus, Direction::Minus}) {
            const auto bc = bc_lfd(FuncExpr::exp(1.0), half, y, s);
            const auto kg = kg_lfd(FuncExpr::cos(3.0), half, y, s);
            CHECK(bc.result.status == LimitStatus::Converged);
            CHECK(std::abs(bc.result.value) < 1e-3);
            CHECK(kg.result.status == LimitStatus::Converged);
            CHECK(std::abs(kg.result.value) < 1e-3);
        }
}

TEST_CASE("too rough for the order: the quotient blows up") {
    // The quotient grows like h^{-1/4}: no limit, though too slowly to count as Divergent.
    const auto slow = bc_lfd(FuncExpr::monomial(1.0, 0.25), FracOrder(0.5), 0.0, Direction::Plus);
    CHECK(slow.result.status != LimitStatus::Converged);
    CHECK(final_spread(slow) > 0.0);
}

TEST_CASE("truncated Weierstrass sums do not settle") {
    const auto w = FuncExpr::weierstrass(0.5, 2.0, 24);
    int unsettled = 0;
    for (int i = 0; i < 10; ++i) {
        const auto p = bc_lfd(w, FracOrder(0.5), 0.13 + 0.07 * i, Direction::Plus);
        if (p.result.status != LimitStatus::Converged) ++unsettled;
    }
    CHECK(unsettled >= 9);
    const auto rep = kg_bc_agreement(w, FracOrder(0.5), 0.4, Direction::Plus);
    CHECK(rep.note.find("tail bound") != std::string::npos);
}

TEST_CASE("tail bound") {
    CHECK(weierstrass_tail_bound(0.5, 2.0, 24) ==
          doctest::Approx(std::pow(2.0, -12.5) / (1.0 - std::pow(2.0, -0.5))));
}

TEST_CASE("triviality sweep") {
    const auto s = triviality_sweep(FuncExpr::monomial(1.0, 0.8), FracOrder(0.5), 0.1, 0.9, 16);
    CHECK(s.fraction == 1.0);
    CHECK(s.probes.size() == 16);
    const auto bc = triviality_sweep(FuncExpr::monomial(1.0, 0.8), FracOrder(0.5), 0.1, 0.9, 8, 1e-3, {},
                                     LocalEstimator::BC);
    CHECK(bc.fraction == 1.0);
    const auto critical = triviality_sweep(root, FracOrder(0.5), 0.0, 0.9, 4);
    CHECK(critical.fraction == doctest::Approx(0.75));
    CHECK_THROWS_AS(triviality_sweep(FuncExpr::monomial(1.0, 0.3), FracOrder(0.5), 0.1, 0.9, 4),
                    ArgumentError);
    std::ostringstream os;
    s.write_csv(os);
    CHECK(os.str().rfind("y,estimate,status,error_bar\n0.10000000000000001,", 0) == 0);
}
