#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "hood/newton.hpp"
#include "hood/random.hpp"

using namespace hood;

namespace {

PadicMatrix mat(std::uint64_t p, std::vector<std::vector<Rational>> rows) {
    return {Prime(p), RationalMatrix::from_rows(rows)};
}

// Oracle: Faddeev-LeVerrier. M_0 = 0, c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I,
// c_{n-k} = -tr(A M_k) / k.
RationalPoly faddeev_leverrier(const RationalMatrix& a) {
    const std::size_t n = a.rows();
    RationalPoly c(n + 1);
    c[n] = 1;
    RationalMatrix m(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m + c[n - k + 1] * RationalMatrix::identity(n);
        RationalMatrix am = a * m;
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
        c[n - k] = -tr / Rational(static_cast<long>(k));
    }
    return c;
}

// Oracle: lower hull evaluated at every integer abscissa by brute force over
// pairs of points; slopes between consecutive integers give root valuations.
std::vector<Rational> hull_root_valuations(const PadicPolynomial& f, long& zero_roots) {
    std::vector<std::pair<long, Rational>> pts;
    for (std::size_t i = 0; i < f.coeffs.size(); ++i)
        if (f.coeffs[i] != 0) pts.push_back({static_cast<long>(i), Rational(*valuation(f.coeffs[i], f.prime))});
    zero_roots = pts.front().first;
    long lo = pts.front().first, hi = pts.back().first;
    std::vector<Rational> h;
    for (long x = lo; x <= hi; ++x) {
        std::optional<Rational> best;
        for (const auto& [i, vi] : pts)
            for (const auto& [j, vj] : pts) {
                if (i > x || j < x) continue;
                Rational t(x - i, j == i ? 1 : j - i);
                t.canonicalize();
                Rational y = vi + (vj - vi) * t;
                if (!best || y < *best) best = y;
            }
        h.push_back(*best);
    }
    std::vector<Rational> v;
    for (std::size_t k = 0; k + 1 < h.size(); ++k) v.push_back(-(h[k + 1] - h[k]));
    std::sort(v.begin(), v.end());
    return v;
}

EntropyValue entropy_from_valuations(Prime p, const std::vector<Rational>& v) {
    Rational s = 0;
    for (const auto& x : v)
        if (x < 0) s -= x;
    return EntropyValue::log_prime(p, s);
}

PadicPolynomial random_poly(random::Rng& rng, Prime p, std::size_t deg) {
    std::uniform_int_distribution<int> zero(0, 3);
    PadicPolynomial f{p, RationalPoly(deg + 1)};
    for (std::size_t i = 0; i <= deg; ++i) f.coeffs[i] = zero(rng) == 0 ? Rational(0) : random::scalar(rng, p, -4, 4);
    f.coeffs[deg] = random::scalar(rng, p, -2, 2);
    return f;
}

} // namespace

TEST(CharPoly, Examples) {
    for (std::uint64_t pv : {2, 3, 5}) {
        Rational p(static_cast<long>(pv)), ip = 1 / p;
        EXPECT_EQ(char_poly(PadicMatrix::identity(Prime(pv), 2)).coeffs, (RationalPoly{1, -2, 1}));
        EXPECT_EQ(char_poly(mat(pv, {{p, 0}, {0, ip}})).coeffs, (RationalPoly{1, -(p + ip), 1}));
        // Companion of x^2 - x/p - 1/p.
        EXPECT_EQ(char_poly(mat(pv, {{0, ip}, {1, ip}})).coeffs, (RationalPoly{-ip, -ip, 1}));
    }
}

TEST(CharPoly, MatchesFaddeevLeVerrier) {
    random::Rng rng(21);
    for (std::uint64_t pv : {2, 3, 5})
        for (std::size_t n = 1; n <= 5; ++n)
            for (int t = 0; t < 20; ++t) {
                PadicMatrix a = random::matrix(rng, Prime(pv), n);
                ASSERT_EQ(char_poly(a).coeffs, faddeev_leverrier(a.rational()));
            }
    random::Rng rng2(22);
    for (int t = 0; t < 30; ++t) {
        PadicMatrix a = random::singular_matrix(rng2, Prime(3), 4);
        ASSERT_EQ(char_poly(a).coeffs, faddeev_leverrier(a.rational()));
    }
}

TEST(CharPoly, RejectsNonSquare) {
    EXPECT_THROW(char_poly(PadicMatrix(Prime(3), RationalMatrix(2, 3))), NonSquare);
}

TEST(NewtonPolygon, Examples) {
    for (std::uint64_t pv : {2, 3, 5}) {
        Prime p(pv);
        Rational ip = prime_power(p, -1);
        auto np1 = newton_polygon({p, {-ip, 1}});
        ASSERT_EQ(np1.segments.size(), 1u);
        EXPECT_EQ(np1.segments[0], (NewtonPolygon::Segment{1, 1}));
        EXPECT_EQ(np1.root_valuations(), std::vector<Rational>{-1});

        auto np2 = newton_polygon({p, {-ip, -ip, 1}});
        EXPECT_EQ(np2.segments, (std::vector<NewtonPolygon::Segment>{{0, 1}, {1, 1}}));

        // (x - 1)^4
        auto np3 = newton_polygon({p, {1, -4, 6, -4, 1}});
        EXPECT_EQ(np3.segments, (std::vector<NewtonPolygon::Segment>{{0, 4}}));
    }
}

TEST(NewtonPolygon, ZeroPolynomialRejected) {
    EXPECT_THROW(newton_polygon({Prime(3), {}}), ZeroPolynomial);
    EXPECT_THROW(newton_polygon({Prime(3), {0, 0}}), ZeroPolynomial);
}

TEST(NewtonPolygon, MatchesBruteForceHull) {
    random::Rng rng(31);
    for (std::uint64_t pv : {2, 3, 5, 7})
        for (std::size_t deg = 1; deg <= 7; ++deg)
            for (int t = 0; t < 40; ++t) {
                PadicPolynomial f = random_poly(rng, Prime(pv), deg);
                NewtonPolygon np = newton_polygon(f);
                long zr = 0;
                auto expected = hull_root_valuations(f, zr);
                ASSERT_EQ(np.zero_roots, zr);
                ASSERT_EQ(np.root_valuations(), expected);
                ASSERT_EQ(np.degree(), static_cast<long>(deg));  // degree conservation
                for (std::size_t s = 1; s < np.segments.size(); ++s)
                    ASSERT_LT(np.segments[s - 1].slope, np.segments[s].slope);
            }
}

TEST(NewtonPolygon, DetConsistency) {
    random::Rng rng(32);
    for (std::uint64_t pv : {2, 3, 5})
        for (int t = 0; t < 200; ++t) {
            PadicPolynomial f = random_poly(rng, Prime(pv), 1 + t % 6);
            if (f.coeffs[0] == 0) continue;
            Rational sum = 0;
            for (const auto& v : newton_polygon(f).root_valuations()) sum += v;
            ASSERT_EQ(sum, *valuation(f.coeffs.front() / f.coeffs.back(), f.prime));
        }
}

TEST(Yuzvinski, Examples) {
    for (std::uint64_t pv : {2, 3, 5, 7}) {
        Prime p(pv);
        EXPECT_TRUE(yuzvinski_entropy(PadicMatrix::identity(p, 3)).is_zero());
        EXPECT_EQ(yuzvinski_entropy(mat(pv, {{prime_power(p, -1)}})), EntropyValue::log_prime(p));
    }
    EXPECT_EQ(yuzvinski_entropy(mat(5, {{Rational(1, 5), 0}, {0, 5}})), EntropyValue::log_prime(Prime(5)));
    EXPECT_TRUE(yuzvinski_entropy(PadicMatrix(Prime(3), RationalMatrix(3, 3))).is_zero());
}

TEST(Yuzvinski, MatchesHullOracle) {
    random::Rng rng(33);
    for (std::uint64_t pv : {2, 3, 5})
        for (std::size_t n = 1; n <= 4; ++n)
            for (int t = 0; t < 25; ++t) {
                PadicMatrix a = random::matrix(rng, Prime(pv), n);
                long zr;
                auto v = hull_root_valuations({Prime(pv), faddeev_leverrier(a.rational())}, zr);
                ASSERT_EQ(yuzvinski_entropy(a), entropy_from_valuations(Prime(pv), v));
            }
}

TEST(Yuzvinski, SimilarityInvariance) {
    random::Rng rng(34);
    for (std::uint64_t pv : {2, 3, 5})
        for (std::size_t n = 1; n <= 4; ++n)
            for (int t = 0; t < 10; ++t) {
                Prime p(pv);
                PadicMatrix m = random::matrix(rng, p, n);
                RationalMatrix s = random::invertible(rng, p, n);
                PadicMatrix conj(p, inverse(s) * m.rational() * s);
                ASSERT_EQ(yuzvinski_entropy(conj), yuzvinski_entropy(m));
            }
}

TEST(Yuzvinski, KernelReduction) {
    random::Rng rng(35);
    for (std::uint64_t pv : {2, 3, 5})
        for (std::size_t n = 1; n <= 4; ++n)
            for (int t = 0; t < 10; ++t) {
                Prime p(pv);
                PadicMatrix m = random::singular_matrix(rng, p, n);
                RationalMatrix bar = induced_on_coimage(m.rational());
                ASSERT_EQ(bar.rows(), rank(m.rational()));
                ASSERT_EQ(yuzvinski_entropy(PadicMatrix(p, bar)), yuzvinski_entropy(m));
            }
}

TEST(Yuzvinski, AlignedDiagonalProductsAdd) {
    random::Rng rng(36);
    std::uniform_int_distribution<long> v(0, 3), sign(0, 1);
    for (std::uint64_t pv : {2, 3, 5})
        for (int t = 0; t < 50; ++t) {
            Prime p(pv);
            std::vector<Rational> d1(3), d2(3), d12(3);
            for (std::size_t i = 0; i < 3; ++i) {
                long s = sign(rng) ? 1 : -1;  // shared expansion direction per coordinate
                d1[i] = random::unit(rng, p) * prime_power(p, s * v(rng));
                d2[i] = random::unit(rng, p) * prime_power(p, s * v(rng));
                d12[i] = d1[i] * d2[i];
            }
            auto h = [&](const std::vector<Rational>& d) {
                return yuzvinski_entropy(PadicMatrix(p, RationalMatrix::diagonal(d)));
            };
            ASSERT_EQ(h(d12), h(d1) + h(d2));
        }
}

TEST(Yuzvinski, BlockDiagonalAdds) {
    random::Rng rng(37);
    for (int t = 0; t < 40; ++t) {
        Prime p(3);
        PadicMatrix a = random::matrix(rng, p, 2), b = random::matrix(rng, p, 2);
        RationalMatrix d(4, 4);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                d(i, j) = a.rational()(i, j);
                d(2 + i, 2 + j) = b.rational()(i, j);
            }
        ASSERT_EQ(yuzvinski_entropy(PadicMatrix(p, d)), yuzvinski_entropy(a) + yuzvinski_entropy(b));
    }
}

TEST(SumOverPrimes, Examples) {
    auto e = entropy_sum_over_primes({{Prime(2), mat(2, {{Rational(1, 2)}})}, {Prime(3), mat(3, {{Rational(1, 3)}})}});
    EXPECT_EQ(e, EntropyValue::log_prime(Prime(2)) + EntropyValue::log_prime(Prime(3)));
    EXPECT_EQ(e.to_string(), "log 2 + log 3");
    EXPECT_TRUE(entropy_sum_over_primes({}).is_zero());
    EXPECT_TRUE(entropy_sum_over_primes({{Prime(5), PadicMatrix::identity(Prime(5), 3)}}).is_zero());
}

TEST(SumOverPrimes, Errors) {
    auto a = mat(2, {{Rational(1, 2)}});
    EXPECT_THROW(entropy_sum_over_primes({{Prime(2), a}, {Prime(2), a}}), DuplicatePrime);
    EXPECT_THROW(entropy_sum_over_primes({{Prime(3), a}}), PrimeMismatch);
}

TEST(EntropyValue, FormalSum) {
    auto a = EntropyValue::log_prime(Prime(5), Rational(3, 2)) + EntropyValue::log_prime(Prime(2));
    EXPECT_EQ(a.coefficient(Prime(5)), Rational(3, 2));
    EXPECT_EQ(a.to_string(), "log 2 + 3/2 log 5");
    EXPECT_TRUE((a + EntropyValue::infinity()).is_infinite());
    EXPECT_THROW(EntropyValue::log_prime(Prime(2), -1), InvalidArgument);
    EXPECT_TRUE(EntropyValue::log_prime(Prime(2), 0).is_zero());
    EXPECT_EQ(EntropyValue::zero().decimal(), "0");
}

TEST(EntropyValue, Decimal) {
    EXPECT_EQ(EntropyValue::log_prime(Prime(5)).decimal(), "1.6094379124341003746");
    // Independent check of the leading digits against long double log.
    for (std::uint64_t pv : {2, 3, 7, 11}) {
        for (long k = 1; k <= 4; ++k) {
            auto e = EntropyValue::log_prime(Prime(pv), Rational(k, 3));
            long double expect = std::log(static_cast<long double>(pv)) * k / 3;
            EXPECT_NEAR(std::stold(e.decimal()), expect, 1e-15L);
        }
    }
}
