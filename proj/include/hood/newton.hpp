#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "hood/entropy_value.hpp"
#include "hood/matrix.hpp"
#include "hood/padic.hpp"

namespace hood {

/// Dense polynomial with rational coefficients, constant term first.
using RationalPoly = std::vector<Rational>;

namespace poly {

inline void trim(RationalPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline bool is_zero(const RationalPoly& a) {
    return std::all_of(a.begin(), a.end(), [](const Rational& c) { return c == 0; });
}

inline RationalPoly mul(const RationalPoly& a, const RationalPoly& b) {
    if (a.empty() || b.empty()) return {};
    RationalPoly c(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    trim(c);
    return c;
}

inline RationalPoly sub(RationalPoly a, const RationalPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

/// Exact quotient a / b; the division must leave no remainder.
inline RationalPoly div_exact(RationalPoly a, const RationalPoly& b) {
    trim(a);
    if (b.empty()) throw DivisionByZero("polynomial division by zero");
    if (a.empty()) return {};
    if (a.size() < b.size()) throw InvalidArgument("inexact polynomial division");
    RationalPoly q(a.size() - b.size() + 1, Rational(0));
    const Rational& lead = b.back();
    for (std::size_t k = q.size(); k-- > 0;) {
        Rational f = a[k + b.size() - 1] / lead;
        q[k] = f;
        if (f == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= f * b[j];
    }
    trim(a);
    if (!a.empty()) throw InvalidArgument("inexact polynomial division");
    trim(q);
    return q;
}

} // namespace poly

/// Polynomial over Q_p: exact rational coefficients tagged with a prime.
struct PadicPolynomial {
    Prime prime;
    RationalPoly coeffs;  // constant term first, trimmed

    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    PadicScalar coeff(std::size_t i) const {
        return PadicScalar::from_rational(i < coeffs.size() ? coeffs[i] : Rational(0), prime);
    }
    std::vector<PadicScalar> scalars() const {
        std::vector<PadicScalar> out;
        out.reserve(coeffs.size());
        for (const auto& c : coeffs) out.push_back(PadicScalar::from_rational(c, prime));
        return out;
    }
};

/// Monic characteristic polynomial det(xI - m) by fraction-free (Bareiss)
/// elimination over Q[x].
inline PadicPolynomial char_poly(const PadicMatrix& m) {
    if (!m.is_square()) throw NonSquare("characteristic polynomial of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return {m.prime(), RationalPoly{Rational(1)}};

    std::vector<std::vector<RationalPoly>> a(n, std::vector<RationalPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            RationalPoly e{Rational(-m.rational()(i, j))};
            if (i == j) e.push_back(Rational(1));
            poly::trim(e);
            a[i][j] = std::move(e);
        }

    RationalPoly prev{Rational(1)};
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].empty()) {
            std::size_t piv = k + 1;
            while (piv < n && a[piv][k].empty()) ++piv;
            if (piv == n) return {m.prime(), RationalPoly{}};  // unreachable: det(xI - m) != 0
            std::swap(a[k], a[piv]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                RationalPoly t = poly::sub(poly::mul(a[k][k], a[i][j]), poly::mul(a[i][k], a[k][j]));
                a[i][j] = poly::div_exact(std::move(t), prev);
            }
        prev = a[k][k];
    }
    RationalPoly det = a[n - 1][n - 1];
    if (negate)
        for (auto& c : det) c = -c;
    return {m.prime(), det};
}

/// Lower convex hull of (i, v(a_i)). Each segment of slope s and length l
/// accounts for l roots of valuation -s.
struct NewtonPolygon {
    struct Segment {
        Rational slope;
        long length;
        friend bool operator==(const Segment&, const Segment&) = default;
    };

    std::vector<Segment> segments;
    long zero_roots = 0;

    long degree() const {
        long d = zero_roots;
        for (const auto& s : segments) d += s.length;
        return d;
    }

    /// Valuations of the nonzero roots, with multiplicity, ascending.
    std::vector<Rational> root_valuations() const {
        std::vector<Rational> v;
        for (const auto& s : segments)
            for (long i = 0; i < s.length; ++i) v.push_back(-s.slope);
        std::sort(v.begin(), v.end());
        return v;
    }
};

inline NewtonPolygon newton_polygon(const PadicPolynomial& f) {
    RationalPoly c = f.coeffs;
    poly::trim(c);
    if (c.empty()) throw ZeroPolynomial("Newton polygon of the zero polynomial");

    std::vector<std::pair<long, long>> pts;  // (i, v(a_i)) over nonzero a_i
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) pts.emplace_back(static_cast<long>(i), *valuation(c[i], f.prime));

    NewtonPolygon np;
    np.zero_roots = pts.front().first;
    std::size_t cur = 0;
    while (cur + 1 < pts.size()) {
        std::size_t best = cur + 1;
        Rational best_slope(pts[best].second - pts[cur].second, pts[best].first - pts[cur].first);
        best_slope.canonicalize();
        for (std::size_t j = cur + 2; j < pts.size(); ++j) {
            Rational s(pts[j].second - pts[cur].second, pts[j].first - pts[cur].first);
            s.canonicalize();
            if (s <= best_slope) {  // ties: take the farthest point
                best_slope = s;
                best = j;
            }
        }
        np.segments.push_back({best_slope, pts[best].first - pts[cur].first});
        cur = best;
    }
    return np;
}

/// Entropy of x -> m x on Q_p^n:  log p * sum over roots with v < 0 of -v.
inline EntropyValue yuzvinski_entropy(const PadicMatrix& m) {
    if (!m.is_square()) throw NonSquare("entropy of non-square matrix");
    if (m.rows() == 0) return EntropyValue::zero();
    NewtonPolygon np = newton_polygon(char_poly(m));
    Rational total = 0;
    for (const auto& s : np.segments)
        if (s.slope > 0) total += s.slope * s.length;
    return EntropyValue::log_prime(m.prime(), total);
}

/// Entropy of a product endomorphism over distinct primes: the per-prime
/// Yuzvinski values added coefficient-wise.
inline EntropyValue entropy_sum_over_primes(const std::vector<std::pair<Prime, PadicMatrix>>& parts) {
    std::set<std::uint64_t> seen;
    EntropyValue total;
    for (const auto& [p, m] : parts) {
        if (!seen.insert(p.value()).second)
            throw DuplicatePrime("prime " + std::to_string(p.value()) + " listed twice");
        if (!(m.prime() == p)) throw PrimeMismatch("matrix prime differs from its part's prime");
        total += yuzvinski_entropy(m);
    }
    return total;
}

} // namespace hood
