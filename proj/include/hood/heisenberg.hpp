#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hood/cotrajectory.hpp"
#include "hood/entropy_value.hpp"
#include "hood/lattice.hpp"
#include "hood/matrix.hpp"
#include "hood/newton.hpp"
#include "hood/padic.hpp"

namespace hood {

// ---------------------------------------------------------------------------
// Coefficient rings for M(A,B;c).

/// Q_p with exact rational values.
struct QpRing {
    using value_type = Rational;

    Prime prime;

    value_type zero() const { return 0; }
    value_type from_int(long x) const { return x; }
    value_type add(const value_type& x, const value_type& y) const { return x + y; }
    value_type sub(const value_type& x, const value_type& y) const { return x - y; }
    value_type mul(const value_type& x, const value_type& y) const { return x * y; }
    value_type neg(const value_type& x) const { return -x; }

    std::string describe() const { return "Q_" + std::to_string(prime.value()); }
    friend bool operator==(const QpRing& a, const QpRing& b) { return a.prime == b.prime; }
};

/// Z / p^k Z with residues in [0, p^k).
struct ZmodRing {
    using value_type = std::uint64_t;

    Prime prime;
    unsigned k;
    std::uint64_t modulus;

    ZmodRing(Prime p, unsigned k_) : prime(p), k(k_), modulus(1) {
        if (k == 0) throw InvalidArgument("Z/p^k needs k >= 1");
        for (unsigned i = 0; i < k; ++i) {
            if (modulus > (std::uint64_t{1} << 31) / p.value()) throw InvalidArgument("modulus p^k too large");
            modulus *= p.value();
        }
    }

    value_type zero() const { return 0; }
    value_type from_int(long x) const {
        long m = static_cast<long>(modulus);
        return static_cast<value_type>(((x % m) + m) % m);
    }
    value_type add(value_type x, value_type y) const { return (x + y) % modulus; }
    value_type sub(value_type x, value_type y) const { return (x + modulus - y) % modulus; }
    value_type mul(value_type x, value_type y) const { return (x * y) % modulus; }
    value_type neg(value_type x) const { return (modulus - x) % modulus; }

    std::string describe() const {
        return "Z/" + std::to_string(prime.value()) + "^" + std::to_string(k);
    }
    friend bool operator==(const ZmodRing& a, const ZmodRing& b) {
        return a.prime == b.prime && a.k == b.k;
    }
};

// ---------------------------------------------------------------------------

/// The matrix M(A,B;c): 1 on the diagonal, row A and column B, corner c.
/// Multiplication is M(A1,B1;c1) M(A2,B2;c2) = M(A1+A2, B1+B2; c1+c2+A1.B2).
template <class Ring>
struct HeisenbergElement {
    using value_type = typename Ring::value_type;

    Ring ring;
    std::vector<value_type> a;
    std::vector<value_type> b;
    value_type c;

    std::size_t n() const noexcept { return a.size(); }

    static HeisenbergElement identity(const Ring& r, std::size_t n) {
        return {r, std::vector<value_type>(n, r.zero()), std::vector<value_type>(n, r.zero()), r.zero()};
    }

    bool is_central() const {
        for (std::size_t i = 0; i < n(); ++i)
            if (a[i] != ring.zero() || b[i] != ring.zero()) return false;
        return true;
    }

    friend bool operator==(const HeisenbergElement& x, const HeisenbergElement& y) {
        return x.ring == y.ring && x.a == y.a && x.b == y.b && x.c == y.c;
    }
};

namespace detail {

template <class Ring>
void check_same_group(const HeisenbergElement<Ring>& x, const HeisenbergElement<Ring>& y) {
    if (!(x.ring == y.ring)) throw RingMismatch("elements over " + x.ring.describe() + " and " + y.ring.describe());
    if (x.n() != y.n() || x.b.size() != x.n() || y.b.size() != y.n())
        throw RingMismatch("elements of Heisenberg groups of different rank");
}

template <class Ring>
typename Ring::value_type dot(const Ring& r, const std::vector<typename Ring::value_type>& u,
                              const std::vector<typename Ring::value_type>& v) {
    auto acc = r.zero();
    for (std::size_t i = 0; i < u.size(); ++i) acc = r.add(acc, r.mul(u[i], v[i]));
    return acc;
}

} // namespace detail

template <class Ring>
HeisenbergElement<Ring> h_mul(const HeisenbergElement<Ring>& x, const HeisenbergElement<Ring>& y) {
    detail::check_same_group(x, y);
    const Ring& r = x.ring;
    HeisenbergElement<Ring> z{r, x.a, x.b, r.zero()};
    for (std::size_t i = 0; i < x.n(); ++i) {
        z.a[i] = r.add(x.a[i], y.a[i]);
        z.b[i] = r.add(x.b[i], y.b[i]);
    }
    z.c = r.add(r.add(x.c, y.c), detail::dot(r, x.a, y.b));
    return z;
}

/// M(A,B;c)^{-1} = M(-A,-B; -c + A.B).
template <class Ring>
HeisenbergElement<Ring> h_inv(const HeisenbergElement<Ring>& x) {
    const Ring& r = x.ring;
    HeisenbergElement<Ring> z{r, x.a, x.b, r.zero()};
    for (std::size_t i = 0; i < x.n(); ++i) {
        z.a[i] = r.neg(x.a[i]);
        z.b[i] = r.neg(x.b[i]);
    }
    z.c = r.add(r.neg(x.c), detail::dot(r, x.a, x.b));
    return z;
}

/// [x, y] = x y x^{-1} y^{-1} = M(0,0; A1.B2 - A2.B1).
template <class Ring>
HeisenbergElement<Ring> h_commutator(const HeisenbergElement<Ring>& x, const HeisenbergElement<Ring>& y) {
    return h_mul(h_mul(h_mul(x, y), h_inv(x)), h_inv(y));
}

using QpElement = HeisenbergElement<QpRing>;
using ZmodElement = HeisenbergElement<ZmodRing>;

inline QpElement qp_element(Prime p, std::vector<Rational> a, std::vector<Rational> b, Rational c) {
    if (a.size() != b.size()) throw InvalidArgument("A and B must have the same length");
    return {QpRing{p}, std::move(a), std::move(b), std::move(c)};
}

inline ZmodElement zmod_element(const ZmodRing& r, const std::vector<long>& a, const std::vector<long>& b, long c) {
    if (a.size() != b.size()) throw InvalidArgument("A and B must have the same length");
    ZmodElement e{r, {}, {}, r.from_int(c)};
    for (long x : a) e.a.push_back(r.from_int(x));
    for (long x : b) e.b.push_back(r.from_int(x));
    return e;
}

// ---------------------------------------------------------------------------
// Graded endomorphisms of H_n(Q_p).
//
// Coordinates on the central quotient are x = (A_1..A_n, B_1..B_n). The map
// sends M(A,B;c) to M(L x; delta c + f(x)) with f(x) = sum_{i<=j} Q_ij x_i x_j.

/// J(x, y) = x_A . y_B - y_A . x_B as a 2n x 2n matrix.
inline RationalMatrix standard_symplectic_form(std::size_t n) {
    RationalMatrix j(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        j(i, n + i) = 1;
        j(n + i, i) = -1;
    }
    return j;
}

struct GradedEndo {
    std::size_t n = 1;
    PadicMatrix l;                      // 2n x 2n, action on the central quotient
    PadicScalar delta;                  // action on the center
    std::optional<RationalMatrix> q;    // symmetric; upper triangle is used

    Prime prime() const { return l.prime(); }

    static GradedEndo identity(Prime p, std::size_t n) {
        return {n, PadicMatrix::identity(p, 2 * n), PadicScalar::one(p), std::nullopt};
    }
};

struct EndoValidation {
    bool valid = true;
    std::string diagnostic;
    std::optional<std::pair<std::size_t, std::size_t>> cell;  // first violated entry

    explicit operator bool() const noexcept { return valid; }
};

namespace detail {

/// beta(e_i, e_j) = (L e_i)_A . (L e_j)_B - delta (e_i)_A . (e_j)_B.
inline RationalMatrix coboundary_target(const GradedEndo& e) {
    const std::size_t n = e.n, d = 2 * n;
    const RationalMatrix& l = e.l.rational();
    Rational delta = e.delta.to_rational();
    RationalMatrix beta(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Rational s = 0;
            for (std::size_t t = 0; t < n; ++t) s += l(t, i) * l(n + t, j);
            if (i < n && j >= n && j - n == i) s -= delta;
            beta(i, j) = s;
        }
    return beta;
}

inline Rational quadratic_value(const RationalMatrix& q, const std::vector<Rational>& x) {
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i; j < x.size(); ++j)
            if (q(i, j) != 0) s += q(i, j) * x[i] * x[j];
    return s;
}

} // namespace detail

inline EndoValidation validate_graded_endo(const GradedEndo& e) {
    EndoValidation res;
    const std::size_t d = 2 * e.n;
    if (e.n == 0 || !e.l.is_square() || e.l.rows() != d) {
        res.valid = false;
        res.diagnostic = "L must be 2n x 2n";
        return res;
    }
    if (!(e.delta.prime() == e.l.prime())) {
        res.valid = false;
        res.diagnostic = "delta and L are over different primes";
        return res;
    }
    RationalMatrix j = standard_symplectic_form(e.n);
    RationalMatrix lhs = e.l.rational().transpose() * j * e.l.rational();
    RationalMatrix rhs = e.delta.to_rational() * j;
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
            if (lhs(r, c) != rhs(r, c)) {
                std::ostringstream os;
                os << "L^T J L != delta J at (" << r << "," << c << "): " << lhs(r, c).get_str()
                   << " vs " << rhs(r, c).get_str();
                res.valid = false;
                res.diagnostic = os.str();
                res.cell = {r, c};
                return res;
            }
    if (e.q) {
        const RationalMatrix& q = *e.q;
        if (q.rows() != d || q.cols() != d) {
            res.valid = false;
            res.diagnostic = "Q must be 2n x 2n";
            return res;
        }
        RationalMatrix beta = detail::coboundary_target(e);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = r; c < d; ++c) {
                if (q(r, c) != q(c, r)) {
                    res.valid = false;
                    res.diagnostic = "Q is not symmetric";
                    res.cell = {r, c};
                    return res;
                }
                std::vector<Rational> er(d, Rational(0)), ec(d, Rational(0)), both(d, Rational(0));
                er[r] = 1;
                ec[c] = 1;
                both[r] += 1;
                both[c] += 1;
                Rational lhs_q = detail::quadratic_value(q, both) - detail::quadratic_value(q, er) -
                                 detail::quadratic_value(q, ec);
                Rational sym = (beta(r, c) + beta(c, r)) / 2;
                if (lhs_q != sym) {
                    std::ostringstream os;
                    os << "quadratic correction fails the coboundary identity at (" << r << "," << c << ")";
                    res.valid = false;
                    res.diagnostic = os.str();
                    res.cell = {r, c};
                    return res;
                }
            }
    }
    return res;
}

/// The quadratic correction making (L, delta) a homomorphism: Q_ij = beta_ij
/// off the diagonal and Q_ii = beta_ii / 2. At p = 2 the diagonal of beta must
/// be even; otherwise the pair is refused.
inline RationalMatrix derive_quadratic_correction(const GradedEndo& e) {
    auto v = validate_graded_endo(GradedEndo{e.n, e.l, e.delta, std::nullopt});
    if (!v) throw IncompatibleEndo(v.diagnostic);
    RationalMatrix beta = detail::coboundary_target(e);
    const std::size_t d = 2 * e.n;
    RationalMatrix q(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        if (e.prime().value() == 2 && beta(i, i) != 0 && *valuation(beta(i, i), e.prime()) < 1)
            throw IncompatibleEndo("p = 2: diagonal coefficient " + std::to_string(i) +
                                   " of the symmetric part is not even");
        q(i, i) = beta(i, i) / 2;
        for (std::size_t j = i + 1; j < d; ++j) {
            q(i, j) = beta(i, j);
            q(j, i) = beta(i, j);
        }
    }
    return q;
}

/// Pointwise action on H_n(Q_p). Without Q the correction is taken to be zero.
inline QpElement apply_graded_endo(const GradedEndo& e, const QpElement& g) {
    if (!(g.ring.prime == e.prime()) || g.n() != e.n) throw RingMismatch("element does not live in the endomorphism's group");
    const std::size_t n = e.n;
    std::vector<Rational> x(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = g.a[i];
        x[n + i] = g.b[i];
    }
    const RationalMatrix& l = e.l.rational();
    QpElement out = QpElement::identity(g.ring, n);
    for (std::size_t r = 0; r < 2 * n; ++r) {
        Rational s = 0;
        for (std::size_t c = 0; c < 2 * n; ++c) s += l(r, c) * x[c];
        (r < n ? out.a[r] : out.b[r - n]) = s;
    }
    out.c = e.delta.to_rational() * g.c;
    if (e.q) out.c += detail::quadratic_value(*e.q, x);
    return out;
}

/// Entropy through the center / central-quotient decomposition:
/// h = h([delta]) + h(L) for injective maps, h(L) when delta = 0.
inline EntropyValue heisenberg_entropy(const GradedEndo& e) {
    auto v = validate_graded_endo(e);
    if (!v) throw IncompatibleEndo(v.diagnostic);
    const Prime p = e.prime();
    if (e.delta.is_zero()) return yuzvinski_entropy(e.l);
    if (determinant(e.l.rational()) == 0)
        throw UnsupportedCase("delta != 0 with singular L is not covered by the decomposition");
    PadicMatrix center(p, RationalMatrix::diagonal({e.delta.to_rational()}));
    return yuzvinski_entropy(center) + yuzvinski_entropy(e.l);
}

/// True iff L has no A<->B cross blocks.
inline bool respects_splitting(const GradedEndo& e) {
    const std::size_t n = e.n;
    const RationalMatrix& l = e.l.rational();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (l(i, n + j) != 0 || l(n + i, j) != 0) return false;
    return true;
}

/// Brute-force entropy over the windows V_m = {A,B in p^{-m} Z_p, c in
/// p^{-2m} Z_p}: the log-index of each cotrajectory step is the center
/// index plus the central-quotient index.
inline OracleReport heisenberg_cotrajectory_oracle(const GradedEndo& e, const OracleParams& params = {}) {
    params.validate();
    auto v = validate_graded_endo(e);
    if (!v) throw IncompatibleEndo(v.diagnostic);
    if (e.delta.is_zero() && !respects_splitting(e))
        throw UnsupportedEndo("cotrajectories do not factor: delta = 0 and L mixes the A and B blocks");
    const Prime p = e.prime();
    PadicMatrix center(p, RationalMatrix::diagonal({e.delta.to_rational()}));
    const auto horizon = static_cast<std::size_t>(params.horizon);
    std::vector<SweepRow> rows;
    for (long m = 0; m <= params.sweep; ++m) {
        auto zc = build_cotrajectory(center, PLattice::standard(p, 1, -2 * m), horizon).log_indices();
        auto zq = build_cotrajectory(e.l, PLattice::standard(p, 2 * e.n, -m), horizon).log_indices();
        for (std::size_t k = 0; k < zc.size(); ++k) zc[k] += zq[k];
        rows.push_back(make_sweep_row(m, std::move(zc), params.window));
    }
    return summarize_sweep(p, std::move(rows));
}

} // namespace hood
