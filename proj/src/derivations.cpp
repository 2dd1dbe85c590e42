#include "fractalc/derivations.hpp"

#include <map>

#include "fractalc/errors.hpp"

namespace fractalc {

namespace {

using SparseRow = std::map<std::size_t, Rational>;

// Row echelon form built incrementally; each stored row has leading
// coefficient 1 at its key.
class Eliminator {
public:
    void add(SparseRow row) {
        while (!row.empty()) {
            const auto lead = row.begin()->first;
            auto it = pivots_.find(lead);
            if (it == pivots_.end()) break;
            const Rational factor = row.begin()->second;
            for (const auto& [col, v] : it->second) {
                auto& slot = row[col];
                slot -= factor * v;
                if (slot == 0) row.erase(col);
            }
        }
        if (row.empty()) return;
        const Rational lead_value = row.begin()->second;
        for (auto& [col, v] : row) v /= lead_value;
        pivots_.emplace(row.begin()->first, std::move(row));
    }

    std::size_t rank() const { return pivots_.size(); }

    std::vector<RationalVector> null_space(std::size_t unknowns) const {
        std::vector<RationalVector> out;
        for (std::size_t free = 0; free < unknowns; ++free) {
            if (pivots_.count(free)) continue;
            RationalVector x(unknowns);
            x[free] = 1;
            for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
                Rational s = 0;
                for (const auto& [col, v] : it->second)
                    if (col != it->first) s += v * x[col];
                x[it->first] = -s;
            }
            out.push_back(std::move(x));
        }
        return out;
    }

private:
    std::map<std::size_t, SparseRow> pivots_;
};

SparseRow sparse(const RationalVector& v) {
    SparseRow r;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) r.emplace(i, v[i]);
    return r;
}

RationalVector flatten(const RationalMatrix& m) {
    RationalVector v;
    for (const auto& row : m) v.insert(v.end(), row.begin(), row.end());
    return v;
}

RationalVector basis_vector(std::size_t m, std::size_t i) {
    RationalVector e(m);
    e[i] = 1;
    return e;
}

}  // namespace

FiniteAlgebra::FiniteAlgebra(AlgebraKind kind, int parameter, std::size_t m, std::vector<Rational> table)
    : kind_(kind), parameter_(parameter), m_(m), table_(std::move(table)) {
    if (table_.size() != m_ * m_ * m_) throw ArgumentError("structure table must hold m^3 entries");
}

FiniteAlgebra FiniteAlgebra::pointwise(int n) {
    if (n < 1) throw ArgumentError("pointwise algebra needs n >= 1");
    const auto m = static_cast<std::size_t>(n);
    std::vector<Rational> t(m * m * m);
    for (std::size_t i = 0; i < m; ++i) t[(i * m + i) * m + i] = 1;
    return FiniteAlgebra(AlgebraKind::Pointwise, n, m, std::move(t));
}

FiniteAlgebra FiniteAlgebra::truncated_polynomial(int d) {
    if (d < 0) throw ArgumentError("truncated polynomial algebra needs d >= 0");
    const auto m = static_cast<std::size_t>(d) + 1;
    std::vector<Rational> t(m * m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (i + j < m) t[(i * m + j) * m + (i + j)] = 1;
    return FiniteAlgebra(AlgebraKind::TruncatedPolynomial, d, m, std::move(t));
}

FiniteAlgebra FiniteAlgebra::from_table(AlgebraKind kind, int parameter, std::size_t m,
                                        std::vector<Rational> table) {
    return FiniteAlgebra(kind, parameter, m, std::move(table));
}

RationalVector FiniteAlgebra::multiply(const RationalVector& x, const RationalVector& y) const {
    RationalVector z(m_);
    for (std::size_t i = 0; i < m_; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < m_; ++j) {
            if (y[j] == 0) continue;
            const Rational xy = x[i] * y[j];
            for (std::size_t k = 0; k < m_; ++k) {
                const auto& c = structure(i, j, k);
                if (c != 0) z[k] += c * xy;
            }
        }
    }
    return z;
}

void FiniteAlgebra::check_invariants() const {
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = 0; j < m_; ++j)
            for (std::size_t k = 0; k < m_; ++k)
                if (structure(i, j, k) != structure(j, i, k))
                    throw InvariantViolation(descriptor() + ": multiplication is not commutative");
    for (std::size_t i = 0; i < m_; ++i) {
        const auto ei = basis_vector(m_, i);
        for (std::size_t j = 0; j < m_; ++j) {
            const auto eij = multiply(ei, basis_vector(m_, j));
            for (std::size_t k = 0; k < m_; ++k) {
                const auto ek = basis_vector(m_, k);
                if (multiply(eij, ek) != multiply(ei, multiply(basis_vector(m_, j), ek)))
                    throw InvariantViolation(descriptor() + ": multiplication is not associative");
            }
        }
    }
}

std::string FiniteAlgebra::descriptor() const {
    return (kind_ == AlgebraKind::Pointwise ? "pointwise(" : "truncated-poly(") +
           std::to_string(parameter_) + ")";
}

DerivationSpace solve_derivation_space(const FiniteAlgebra& algebra) {
    algebra.check_invariants();
    const std::size_t m = algebra.dimension();
    auto unknown = [m](std::size_t row, std::size_t col) { return row * m + col; };

    // Coefficient of e_l in M(e_i e_j) - M(e_i) e_j - e_i M(e_j), linear in M.
    Eliminator elim;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            for (std::size_t l = 0; l < m; ++l) {
                SparseRow row;
                auto add = [&row](std::size_t u, const Rational& v) {
                    if (v == 0) return;
                    auto& slot = row[u];
                    slot += v;
                    if (slot == 0) row.erase(u);
                };
                for (std::size_t k = 0; k < m; ++k) add(unknown(l, k), algebra.structure(i, j, k));
                for (std::size_t p = 0; p < m; ++p) {
                    add(unknown(p, i), -algebra.structure(p, j, l));
                    add(unknown(p, j), -algebra.structure(i, p, l));
                }
                if (!row.empty()) elim.add(std::move(row));
            }
        }
    }

    DerivationSpace space{algebra, {}, elim.rank()};
    for (const auto& x : elim.null_space(m * m)) {
        RationalMatrix mat(m, RationalVector(m));
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c) mat[r][c] = x[unknown(r, c)];
        space.basis.push_back(std::move(mat));
    }
    return space;
}

RationalVector apply(const RationalMatrix& m, const RationalVector& v) {
    RationalVector out(m.size());
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < v.size(); ++c)
            if (m[r][c] != 0 && v[c] != 0) out[r] += m[r][c] * v[c];
    return out;
}

bool satisfies_leibniz(const FiniteAlgebra& algebra, const RationalMatrix& m) {
    const std::size_t n = algebra.dimension();
    if (m.size() != n) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const auto ei = basis_vector(n, i);
        const auto dei = fractalc::apply(m, ei);
        for (std::size_t j = i; j < n; ++j) {
            const auto ej = basis_vector(n, j);
            const auto lhs = fractalc::apply(m, algebra.multiply(ei, ej));
            auto rhs = algebra.multiply(dei, ej);
            const auto second = algebra.multiply(ei, fractalc::apply(m, ej));
            for (std::size_t k = 0; k < n; ++k) rhs[k] += second[k];
            if (lhs != rhs) return false;
        }
    }
    return true;
}

bool in_span(const DerivationSpace& space, const RationalMatrix& m) {
    Eliminator elim;
    for (const auto& b : space.basis) elim.add(sparse(flatten(b)));
    const std::size_t before = elim.rank();
    elim.add(sparse(flatten(m)));
    return elim.rank() == before;
}

RationalMatrix zero_matrix(std::size_t m) { return RationalMatrix(m, RationalVector(m)); }

RationalMatrix formal_derivative(const FiniteAlgebra& algebra) {
    if (algebra.kind() != AlgebraKind::TruncatedPolynomial)
        throw ArgumentError("formal derivative needs a truncated polynomial algebra");
    const std::size_t m = algebra.dimension();
    RationalMatrix d = zero_matrix(m);
    for (std::size_t i = 1; i < m; ++i) d[i - 1][i] = static_cast<long>(i);
    return d;
}

RationalMatrix multiplication_operator(const FiniteAlgebra& algebra, const RationalVector& q) {
    const std::size_t m = algebra.dimension();
    RationalMatrix l = zero_matrix(m);
    for (std::size_t j = 0; j < m; ++j) {
        const auto col = algebra.multiply(q, basis_vector(m, j));
        for (std::size_t k = 0; k < m; ++k) l[k][j] = col[k];
    }
    return l;
}

bool Factorization::exact() const {
    for (const auto& row : residual)
        for (const auto& v : row)
            if (v != 0) return false;
    return true;
}

Factorization factor_through_derivative(const FiniteAlgebra& algebra, const RationalMatrix& m) {
    if (algebra.kind() != AlgebraKind::TruncatedPolynomial)
        throw ArgumentError("factor_through_derivative: algebra kind must be truncated polynomial");
    const std::size_t n = algebra.dimension();
    Factorization out;
    out.q = n > 1 ? fractalc::apply(m, basis_vector(n, 1)) : RationalVector(n);
    const auto dq = multiplication_operator(algebra, out.q);
    const auto d = formal_derivative(algebra);
    out.residual = m;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            Rational s = 0;
            for (std::size_t k = 0; k < n; ++k) s += dq[r][k] * d[k][c];
            out.residual[r][c] -= s;
        }
    return out;
}

std::vector<Factorization> factor_through_derivative(const DerivationSpace& space) {
    std::vector<Factorization> out;
    for (const auto& b : space.basis) out.push_back(factor_through_derivative(space.algebra, b));
    return out;
}

bool cube_root_annihilation_check(const FiniteAlgebra& algebra, const RationalMatrix& d,
                                  const RationalVector& v) {
    if (algebra.kind() != AlgebraKind::Pointwise)
        throw ArgumentError("cube-root argument needs a pointwise algebra");
    if (v.size() != algebra.dimension()) throw ArgumentError("element has the wrong dimension");
    bool has_zero = false;
    for (const auto& x : v) has_zero = has_zero || x == 0;
    if (!has_zero) throw ArgumentError("element must vanish at some coordinate");
    if (!satisfies_leibniz(algebra, d)) throw InvariantViolation("candidate map is not a derivation");
    const auto dv = fractalc::apply(d, v);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] == 0 && dv[i] != 0) return false;
    return true;
}

std::string rational_string(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

}  // namespace fractalc
