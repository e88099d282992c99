#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hood/heisenberg.hpp"
#include "hood/matrix.hpp"
#include "hood/padic.hpp"

namespace hood::random {

using Rng = std::mt19937_64;

/// Random p-adic unit of the form +-a/b with 1 <= a, b <= 9 prime to p.
inline Rational unit(Rng& rng, Prime p) {
    std::uniform_int_distribution<int> digit(1, 9), sign(0, 1);
    auto coprime = [&] {
        int x;
        do x = digit(rng);
        while (static_cast<std::uint64_t>(x) % p.value() == 0);
        return x;
    };
    Rational q(coprime(), coprime());
    q.canonicalize();
    return sign(rng) ? q : Rational(-q);
}

/// unit * p^v with v uniform in [vmin, vmax].
inline Rational scalar(Rng& rng, Prime p, long vmin, long vmax) {
    std::uniform_int_distribution<long> v(vmin, vmax);
    return unit(rng, p) * prime_power(p, v(rng));
}

/// Square matrix whose entries are all nonzero with valuations in [vmin, vmax].
inline PadicMatrix matrix(Rng& rng, Prime p, std::size_t n, long vmin = -3, long vmax = 3) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = scalar(rng, p, vmin, vmax);
    return {p, m};
}

/// Invertible matrix: lower unitriangular * diagonal * upper unitriangular.
inline RationalMatrix invertible(Rng& rng, Prime p, std::size_t n, long vmin = -2, long vmax = 2) {
    RationalMatrix lo = RationalMatrix::identity(n), up = RationalMatrix::identity(n);
    std::vector<Rational> d(n);
    std::uniform_int_distribution<int> coin(0, 2);
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = scalar(rng, p, vmin, vmax);
        for (std::size_t j = 0; j < i; ++j) {
            if (coin(rng)) lo(i, j) = scalar(rng, p, vmin, vmax);
            if (coin(rng)) up(j, i) = scalar(rng, p, vmin, vmax);
        }
    }
    return lo * RationalMatrix::diagonal(d) * up;
}

/// Square matrix of rank < n: a random matrix times a rank-deficient projector.
inline PadicMatrix singular_matrix(Rng& rng, Prime p, std::size_t n) {
    std::uniform_int_distribution<std::size_t> r(0, n - 1);
    std::size_t rk = r(rng);
    RationalMatrix a = invertible(rng, p, n), b = invertible(rng, p, n);
    std::vector<Rational> d(n, Rational(0));
    for (std::size_t i = 0; i < rk; ++i) d[i] = 1;
    return {p, a * RationalMatrix::diagonal(d) * b};
}

/// Random (delta, L) with L^T J L = delta J.
///
/// L = diag(delta I, I) * S where S is a product of symplectic generators:
/// [[X, 0], [0, X^{-T}]], [[I, T], [0, I]] and [[I, 0], [T, I]] with T
/// symmetric. With `degenerate`, delta = 0 and L = [[X, 0], [0, 0]].
inline GradedEndo graded_endo(Rng& rng, Prime p, std::size_t n, bool degenerate = false) {
    const std::size_t d = 2 * n;
    if (degenerate) {
        RationalMatrix l(d, d);
        RationalMatrix x = invertible(rng, p, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) l(i, j) = x(i, j);
        return {n, PadicMatrix(p, l), PadicScalar::zero(p), std::nullopt};
    }
    RationalMatrix s = RationalMatrix::identity(d);
    std::uniform_int_distribution<int> kind(0, 2);
    for (int step = 0; step < 3; ++step) {
        RationalMatrix g = RationalMatrix::identity(d);
        switch (kind(rng)) {
        case 0: {
            RationalMatrix x = invertible(rng, p, n, -1, 1);
            RationalMatrix xit = inverse(x).transpose();
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    g(i, j) = x(i, j);
                    g(n + i, n + j) = xit(i, j);
                }
            break;
        }
        default: {
            bool upper = kind(rng) != 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    Rational t = scalar(rng, p, -1, 1);
                    if (upper) {
                        g(i, n + j) = t;
                        g(j, n + i) = t;
                    } else {
                        g(n + i, j) = t;
                        g(n + j, i) = t;
                    }
                }
            break;
        }
        }
        s = s * g;
    }
    Rational delta = scalar(rng, p, -2, 2);
    std::vector<Rational> dm(d, Rational(1));
    for (std::size_t i = 0; i < n; ++i) dm[i] = delta;
    return {n, PadicMatrix(p, RationalMatrix::diagonal(dm) * s), PadicScalar::from_rational(delta, p), std::nullopt};
}

/// Random element of H_n(Q_p) with coordinates of valuation in [-2, 2].
inline QpElement qp_element(Rng& rng, Prime p, std::size_t n) {
    QpElement e = QpElement::identity(QpRing{p}, n);
    for (std::size_t i = 0; i < n; ++i) {
        e.a[i] = scalar(rng, p, -2, 2);
        e.b[i] = scalar(rng, p, -2, 2);
    }
    e.c = scalar(rng, p, -2, 2);
    return e;
}

inline ZmodElement zmod_element(Rng& rng, const ZmodRing& r, std::size_t n) {
    std::uniform_int_distribution<std::uint64_t> u(0, r.modulus - 1);
    ZmodElement e = ZmodElement::identity(r, n);
    for (std::size_t i = 0; i < n; ++i) {
        e.a[i] = u(rng);
        e.b[i] = u(rng);
    }
    e.c = u(rng);
    return e;
}

} // namespace hood::random
