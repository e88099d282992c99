#pragma once

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "hood/matrix.hpp"
#include "hood/padic.hpp"

namespace hood {

namespace detail {

/// Column Hermite form over Z_(p) of the lattice spanned by the columns of
/// `gens` (n rows, any number of columns, rank n required).
///
/// Result: upper-triangular n x n basis, diagonal entries p^e_i, and every
/// entry right of the diagonal in row i reduced to its canonical residue
/// modulo p^e_i Z_p.
inline RationalMatrix padic_hermite(const RationalMatrix& gens, Prime p) {
    const std::size_t n = gens.rows();
    std::vector<std::vector<Rational>> active;
    active.reserve(gens.cols());
    for (std::size_t j = 0; j < gens.cols(); ++j) active.push_back(gens.column(j));

    std::vector<std::vector<Rational>> basis(n);
    std::vector<long> exps(n, 0);
    for (std::size_t ii = n; ii-- > 0;) {
        std::size_t piv = active.size();
        long best = std::numeric_limits<long>::max();
        for (std::size_t j = 0; j < active.size(); ++j) {
            const Rational& x = active[j][ii];
            if (x == 0) continue;
            long v = *valuation(x, p);
            if (v < best) {
                best = v;
                piv = j;
            }
        }
        if (piv == active.size()) throw Singular("generators do not span a full-rank lattice");
        std::vector<Rational> pc = std::move(active[piv]);
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(piv));
        for (auto& col : active) {
            if (col[ii] == 0) continue;
            Rational f = col[ii] / pc[ii];
            for (std::size_t r = 0; r <= ii; ++r)
                if (pc[r] != 0) col[r] -= f * pc[r];
        }
        // Normalize the pivot to an exact prime power.
        Rational unit_inv = prime_power(p, best) / pc[ii];
        for (std::size_t r = 0; r <= ii; ++r) pc[r] *= unit_inv;
        basis[ii] = std::move(pc);
        exps[ii] = best;
    }

    RationalMatrix h(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i <= j; ++i) h(i, j) = basis[j][i];

    // Reduce row i right of the diagonal with column i, bottom row first;
    // column i only touches rows <= i, so finished rows stay reduced.
    for (std::size_t i = n; i-- > 0;) {
        const Rational diag = h(i, i);
        for (std::size_t j = i + 1; j < n; ++j) {
            Rational r = reduce_mod_prime_power(h(i, j), p, exps[i]);
            if (r == h(i, j)) continue;
            Rational f = (h(i, j) - r) / diag;
            for (std::size_t k = 0; k <= i; ++k) h(k, j) -= f * h(k, i);
        }
    }
    return h;
}

} // namespace detail

/// Full-rank Z_p-lattice in Q_p^n, held in canonical column Hermite form so
/// that equality of lattices is equality of bases.
class PLattice {
public:
    /// Lattice spanned by the columns of `generators` (n x m, rank n).
    PLattice(Prime p, const RationalMatrix& generators)
        : prime_(p), basis_(detail::padic_hermite(generators, p)) {
        for (std::size_t i = 0; i < basis_.rows(); ++i) log_det_ += *valuation(basis_(i, i), p);
    }

    /// p^scale * Z_p^n.
    static PLattice standard(Prime p, std::size_t n, long scale = 0) {
        return PLattice(p, prime_power(p, scale) * RationalMatrix::identity(n));
    }

    Prime prime() const noexcept { return prime_; }
    std::size_t dim() const noexcept { return basis_.rows(); }
    const RationalMatrix& basis() const noexcept { return basis_; }
    /// v_p(det basis); the co-volume exponent relative to Z_p^n.
    long log_det() const noexcept { return log_det_; }

    /// Diagonal exponents of the canonical form.
    std::vector<long> diagonal_exponents() const {
        std::vector<long> e(dim());
        for (std::size_t i = 0; i < dim(); ++i) e[i] = *valuation(basis_(i, i), prime_);
        return e;
    }

    bool contains(const std::vector<Rational>& x) const {
        if (x.size() != dim()) throw DimensionMismatch("vector dimension differs from lattice dimension");
        // Back-substitution through the upper-triangular basis.
        std::vector<Rational> rest = x;
        for (std::size_t i = dim(); i-- > 0;) {
            Rational c = rest[i] / basis_(i, i);
            if (!is_padic_integer(c, prime_)) return false;
            for (std::size_t r = 0; r <= i; ++r) rest[r] -= c * basis_(r, i);
        }
        return true;
    }

    /// True iff every basis vector of `other` lies in this lattice.
    bool contains(const PLattice& other) const {
        check_compatible(other);
        for (std::size_t j = 0; j < dim(); ++j)
            if (!contains(other.basis_.column(j))) return false;
        return true;
    }

    /// Dual lattice {y : <x, y> in Z_p for all x in L}.
    PLattice dual() const { return PLattice(prime_, inverse(basis_).transpose()); }

    PLattice scaled(long k) const { return PLattice(prime_, prime_power(prime_, k) * basis_); }

    void check_compatible(const PLattice& other) const {
        if (!(prime_ == other.prime_)) throw PrimeMismatch("lattices over different primes");
        if (dim() != other.dim()) throw DimensionMismatch("lattices of different dimension");
    }

    friend bool operator==(const PLattice& a, const PLattice& b) {
        return a.prime_ == b.prime_ && a.basis_ == b.basis_;
    }

private:
    Prime prime_;
    RationalMatrix basis_;
    long log_det_ = 0;
};

/// log_p |lattice : sub|. Requires sub to be contained in lattice.
inline long lattice_index(const PLattice& lattice, const PLattice& sub) {
    if (!lattice.contains(sub)) throw NotASublattice("second lattice is not contained in the first");
    return sub.log_det() - lattice.log_det();
}

/// Sum L1 + L2.
inline PLattice lattice_sum(const PLattice& a, const PLattice& b) {
    a.check_compatible(b);
    const std::size_t n = a.dim();
    RationalMatrix gens(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            gens(i, j) = a.basis()(i, j);
            gens(i, n + j) = b.basis()(i, j);
        }
    return PLattice(a.prime(), gens);
}

/// L1 ∩ L2, computed as the dual of L1* + L2*.
inline PLattice lattice_intersect(const PLattice& a, const PLattice& b) {
    a.check_compatible(b);
    return lattice_sum(a.dual(), b.dual()).dual();
}

/// within ∩ A^{-1}(target) = {x in within : A x in target}. A may be singular.
///
/// Writing x = B_w y with y in Z_p^n, the condition is M y in Z_p^n for
/// M = B_t^{-1} A B_w; the admissible y form the dual of Z_p^n + M^T Z_p^n.
inline PLattice preimage_meet(const PadicMatrix& a, const PLattice& target, const PLattice& within) {
    target.check_compatible(within);
    if (!(a.prime() == target.prime())) throw PrimeMismatch("map and lattice over different primes");
    if (!a.is_square() || a.rows() != target.dim()) throw DimensionMismatch("map does not act on the lattice's space");
    const std::size_t n = target.dim();
    RationalMatrix m = inverse(target.basis()) * a.rational() * within.basis();
    RationalMatrix mt = m.transpose();
    RationalMatrix gens(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        gens(i, i) = 1;
        for (std::size_t j = 0; j < n; ++j) gens(i, n + j) = mt(i, j);
    }
    PLattice coords = PLattice(a.prime(), gens).dual();
    return PLattice(a.prime(), within.basis() * coords.basis());
}

} // namespace hood
