#include "doctest.h"

#include <chrono>
#include <random>

#include "fractalc/derivations.hpp"
#include "fractalc/errors.hpp"

using namespace fractalc;

namespace {

RationalMatrix random_combination(const DerivationSpace& s, std::mt19937_64& gen) {
    RationalMatrix out = zero_matrix(s.algebra.dimension());
    for (const auto& b : s.basis) {
        const Rational c(static_cast<int>(gen() % 11) - 5, static_cast<int>(gen() % 4) + 1);
        for (std::size_t i = 0; i < out.size(); ++i)
            for (std::size_t j = 0; j < out.size(); ++j) out[i][j] += c * b[i][j];
    }
    return out;
}

}  // namespace

TEST_CASE("structure constants") {
    const auto p = FiniteAlgebra::pointwise(3);
    CHECK(p.dimension() == 3);
    CHECK(p.structure(1, 1, 1) == 1);
    CHECK(p.structure(0, 1, 1) == 0);
    CHECK(p.descriptor() == "pointwise(3)");
    const auto q = FiniteAlgebra::truncated_polynomial(4);
    CHECK(q.dimension() == 5);
    CHECK(q.descriptor() == "truncated-poly(4)");
    // x^2 * x^3 = 0 mod x^5
    const RationalVector x2{0, 0, 1, 0, 0}, x3{0, 0, 0, 1, 0};
    CHECK(q.multiply(x2, x3) == RationalVector(5, 0));
    const RationalVector x1{0, 1, 0, 0, 0};
    CHECK(q.multiply(x1, x3) == RationalVector{0, 0, 0, 0, 1});
    p.check_invariants();
    q.check_invariants();
}

TEST_CASE("malformed tables are rejected") {
    // e0 e1 = e0 but e1 e0 = e1
    std::vector<Rational> t(8);
    t[(0 * 2 + 1) * 2 + 0] = 1;
    t[(1 * 2 + 0) * 2 + 1] = 1;
    const auto bad = FiniteAlgebra::from_table(AlgebraKind::Pointwise, 2, 2, t);
    CHECK_THROWS_AS(bad.check_invariants(), InvariantViolation);
    CHECK_THROWS_AS(solve_derivation_space(bad), InvariantViolation);
    CHECK_THROWS_AS(FiniteAlgebra::pointwise(0), ArgumentError);
}

TEST_CASE("pointwise algebras carry no derivations") {
    // Dimensions agree with an independent symbolic rank computation for n <= 6.
    for (int n = 1; n <= 8; ++n) {
        const auto s = solve_derivation_space(FiniteAlgebra::pointwise(n));
        CHECK(s.dimension() == 0);
        CHECK(s.constraint_rank == static_cast<std::size_t>(n * n));
    }
}

TEST_CASE("largest pointwise case is fast") {
    const auto t0 = std::chrono::steady_clock::now();
    const auto s = solve_derivation_space(FiniteAlgebra::pointwise(kMaxPointwiseSize));
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(s.dimension() == 0);
    CHECK(sec < 5.0);
}

TEST_CASE("truncated polynomial derivations factor through d/dx") {
    // Dimension d for d = 0..5 matches an independent symbolic computation.
    for (int d = 0; d <= kMaxPolynomialDegree; ++d) {
        const auto alg = FiniteAlgebra::truncated_polynomial(d);
        const auto s = solve_derivation_space(alg);
        INFO("d = " << d);
        CHECK(s.dimension() == static_cast<std::size_t>(d));
        for (const auto& b : s.basis) CHECK(satisfies_leibniz(alg, b));
        for (const auto& f : factor_through_derivative(s)) {
            CHECK(f.exact());
            CHECK(f.q.at(0) == 0);
        }
    }
}

TEST_CASE("random members of the space are derivations") {
    std::mt19937_64 gen(3);
    const auto alg = FiniteAlgebra::truncated_polynomial(5);
    const auto s = solve_derivation_space(alg);
    for (int trial = 0; trial < 10; ++trial) {
        const auto m = random_combination(s, gen);
        CHECK(satisfies_leibniz(alg, m));
        CHECK(in_span(s, m));
        CHECK(factor_through_derivative(alg, m).exact());
    }
}

TEST_CASE("d/dx itself is not a derivation modulo x^{d+1}") {
    const auto alg = FiniteAlgebra::truncated_polynomial(3);
    const auto dx = formal_derivative(alg);
    CHECK_FALSE(satisfies_leibniz(alg, dx));
    CHECK_FALSE(in_span(solve_derivation_space(alg), dx));
    const auto x = multiplication_operator(alg, {0, 1, 0, 0});
    CHECK(fractalc::apply(x, {1, 0, 0, 0}) == RationalVector{0, 1, 0, 0});
    CHECK_THROWS_AS(formal_derivative(FiniteAlgebra::pointwise(3)), ArgumentError);
    CHECK_THROWS_AS(factor_through_derivative(FiniteAlgebra::pointwise(2), zero_matrix(2)), ArgumentError);
}

TEST_CASE("cube root annihilation on the pointwise model") {
    const auto alg = FiniteAlgebra::pointwise(4);
    CHECK(cube_root_annihilation_check(alg, zero_matrix(4), {0, 1, 2, 0}));
    CHECK_THROWS_AS(cube_root_annihilation_check(alg, zero_matrix(4), {1, 1, 2, 3}), ArgumentError);
    RationalMatrix not_leibniz = zero_matrix(4);
    not_leibniz[0][0] = 1;
    CHECK_THROWS_AS(cube_root_annihilation_check(alg, not_leibniz, {0, 1, 2, 0}), InvariantViolation);
}

TEST_CASE("rational strings") {
    CHECK(rational_string(Rational(3)) == "3/1");
    CHECK(rational_string(Rational(-2, 6)) == "-1/3");
    CHECK(rational_string(Rational(0)) == "0/1");
}
