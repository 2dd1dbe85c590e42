#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <string>
#include <vector>

namespace fractalc {

using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;
/// Square matrix, row-major; column j holds the image of basis element e_j.
using RationalMatrix = std::vector<RationalVector>;

inline constexpr int kMaxPointwiseSize = 16;
inline constexpr int kMaxPolynomialDegree = 8;

enum class AlgebraKind { Pointwise, TruncatedPolynomial };

/// Finite-dimensional commutative algebra given by its structure constants
/// e_i * e_j = sum_k c_{ijk} e_k.
class FiniteAlgebra {
public:
    /// R^n with the idempotent basis e_i e_j = delta_ij e_i.
    static FiniteAlgebra pointwise(int n);
    /// R[x]/(x^{d+1}) with basis 1, x, ..., x^d.
    static FiniteAlgebra truncated_polynomial(int d);
    /// Arbitrary table, indexed [(i*m + j)*m + k]; not validated here.
    static FiniteAlgebra from_table(AlgebraKind kind, int parameter, std::size_t m,
                                    std::vector<Rational> table);

    AlgebraKind kind() const { return kind_; }
    int parameter() const { return parameter_; }
    std::size_t dimension() const { return m_; }
    const Rational& structure(std::size_t i, std::size_t j, std::size_t k) const {
        return table_[(i * m_ + j) * m_ + k];
    }

    RationalVector multiply(const RationalVector& x, const RationalVector& y) const;

    /// Throws InvariantViolation unless multiplication is commutative and
    /// associative on all basis pairs and triples.
    void check_invariants() const;

    /// "pointwise(8)" or "truncated-poly(4)"
    std::string descriptor() const;

private:
    FiniteAlgebra(AlgebraKind kind, int parameter, std::size_t m, std::vector<Rational> table);

    AlgebraKind kind_;
    int parameter_;
    std::size_t m_;
    std::vector<Rational> table_;
};

struct DerivationSpace {
    FiniteAlgebra algebra;
    std::vector<RationalMatrix> basis;
    /// Rank of the Leibniz constraint system over the m^2 unknowns.
    std::size_t constraint_rank = 0;

    std::size_t dimension() const { return basis.size(); }
};

/// Exact null space of the Leibniz constraints M(e_i e_j) = M(e_i) e_j + e_i M(e_j), i <= j.
/// Throws InvariantViolation when the structure constants are not commutative
/// and associative.
DerivationSpace solve_derivation_space(const FiniteAlgebra& algebra);

RationalVector apply(const RationalMatrix& m, const RationalVector& v);

bool satisfies_leibniz(const FiniteAlgebra& algebra, const RationalMatrix& m);

/// Exact membership of m in the span of space.basis.
bool in_span(const DerivationSpace& space, const RationalMatrix& m);

/// P -> P' on a truncated polynomial algebra.
RationalMatrix formal_derivative(const FiniteAlgebra& algebra);

/// Multiplication by q as a matrix.
RationalMatrix multiplication_operator(const FiniteAlgebra& algebra, const RationalVector& q);

struct Factorization {
    RationalVector q;         // image of x
    RationalMatrix residual;  // M - (q * d/dx)
    bool exact() const;
};

/// Writes M as (multiplication by q) o d/dx with q = M(x). Throws
/// ArgumentError on pointwise algebras.
Factorization factor_through_derivative(const FiniteAlgebra& algebra, const RationalMatrix& m);
std::vector<Factorization> factor_through_derivative(const DerivationSpace& space);

/// True iff D v vanishes on every coordinate where v vanishes. Requires a
/// pointwise algebra (ArgumentError), a zero coordinate in v (ArgumentError)
/// and a Leibniz matrix D (InvariantViolation).
bool cube_root_annihilation_check(const FiniteAlgebra& algebra, const RationalMatrix& d,
                                  const RationalVector& v);

RationalMatrix zero_matrix(std::size_t m);

/// "p/q" with q >= 1, also for integers.
std::string rational_string(const Rational& r);

}  // namespace fractalc
