#include <gtest/gtest.h>

#include "hood/cotrajectory.hpp"
#include "hood/newton.hpp"
#include "hood/random.hpp"

using namespace hood;

namespace {

PadicMatrix diag(Prime p, std::vector<Rational> d) { return {p, RationalMatrix::diagonal(d)}; }

std::vector<long> iota(long n, long step = 1) {
    std::vector<long> v(n);
    for (long i = 0; i < n; ++i) v[i] = i * step;
    return v;
}

} // namespace

TEST(Cotrajectory, DivisionByPrime) {
    for (std::uint64_t pv : {2, 3, 5, 7}) {
        Prime p(pv);
        PadicMatrix a = diag(p, {prime_power(p, -1)});
        Cotrajectory t = build_cotrajectory(a, PLattice::standard(p, 1), 12);
        EXPECT_EQ(t.log_indices(), iota(12));
        for (std::size_t k = 0; k < t.steps.size(); ++k)
            EXPECT_EQ(t.steps[k].lattice, PLattice::standard(p, 1, static_cast<long>(k)));

        OracleReport r = cotrajectory_entropy(a);
        ASSERT_TRUE(r.ok());
        EXPECT_EQ(*r.entropy, EntropyValue::log_prime(p));
        ASSERT_EQ(r.rows.size(), 7u);
        for (const auto& row : r.rows) {
            EXPECT_EQ(row.log_indices, iota(40));
            EXPECT_EQ(row.rate, 1);
        }
    }
}

TEST(Cotrajectory, Identity) {
    Prime p(3);
    Cotrajectory t = build_cotrajectory(PadicMatrix::identity(p, 2), PLattice::standard(p, 2), 10);
    for (const auto& s : t.steps) {
        EXPECT_EQ(s.lattice, PLattice::standard(p, 2));
        EXPECT_EQ(s.log_index, 0);
    }
    OracleReport r = cotrajectory_entropy(PadicMatrix::identity(p, 2));
    ASSERT_TRUE(r.ok());
    EXPECT_TRUE(r.entropy->is_zero());
}

TEST(Cotrajectory, ExpandingAndContracting) {
    Prime p(5);
    PadicMatrix a = diag(p, {Rational(1, 5), 5});
    Cotrajectory t = build_cotrajectory(a, PLattice::standard(p, 2), 15);
    for (std::size_t k = 0; k < t.steps.size(); ++k) {
        std::vector<Rational> d = {prime_power(p, static_cast<long>(k)), 1};
        EXPECT_EQ(t.steps[k].lattice, PLattice(p, RationalMatrix::diagonal(d)));
    }
    OracleReport r = cotrajectory_entropy(a);
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(*r.entropy, yuzvinski_entropy(a));
    EXPECT_EQ(*r.entropy, EntropyValue::log_prime(p));
}

TEST(Cotrajectory, NestingAndMonotonicity) {
    random::Rng rng(51);
    for (std::uint64_t pv : {2, 3, 5})
        for (std::size_t n = 1; n <= 3; ++n)
            for (int t = 0; t < 5; ++t) {
                Prime p(pv);
                PadicMatrix a = random::matrix(rng, p, n);
                Cotrajectory c = build_cotrajectory(a, PLattice::standard(p, n, -1), 20);
                for (std::size_t k = 1; k < c.steps.size(); ++k) {
                    ASSERT_TRUE(c.steps[k - 1].lattice.contains(c.steps[k].lattice));
                    ASSERT_GE(c.steps[k].log_index, c.steps[k - 1].log_index);
                }
                OracleReport r = cotrajectory_entropy(a);
                ASSERT_TRUE(r.ok());
                for (std::size_t m = 1; m < r.rows.size(); ++m) ASSERT_GE(*r.rows[m].rate, *r.rows[m - 1].rate);
            }
}

TEST(Cotrajectory, SingularMaps) {
    random::Rng rng(52);
    for (std::uint64_t pv : {2, 3})
        for (int t = 0; t < 20; ++t) {
            Prime p(pv);
            PadicMatrix a = random::singular_matrix(rng, p, 3);
            OracleReport r = cotrajectory_entropy(a);
            ASSERT_TRUE(r.ok());
            ASSERT_EQ(*r.entropy, yuzvinski_entropy(a));
        }
    OracleReport zero = cotrajectory_entropy(PadicMatrix(Prime(3), RationalMatrix(2, 2)));
    ASSERT_TRUE(zero.ok());
    EXPECT_TRUE(zero.entropy->is_zero());
}

TEST(Cotrajectory, NotStabilizedCarriesNoValue) {
    // Increments 3, 3, 1 over a horizon of 4: the window of 2 sees no constant tail.
    Prime p(2);
    PadicMatrix a(p, RationalMatrix::from_rows({{Rational(-112, 3), Rational(448, 9), Rational(32, 7)},
                                                 {Rational(-1, 72), Rational(-1, 14), Rational(5, 56)},
                                                 {4, Rational(24, 5), Rational(-3, 5)}}));
    OracleReport r = cotrajectory_entropy(a, {0, 4, 2});
    EXPECT_FALSE(r.ok());
    EXPECT_FALSE(r.entropy.has_value());
    EXPECT_FALSE(r.diagnostic.empty());
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_EQ(r.rows[0].log_indices, (std::vector<long>{0, 3, 6, 7}));
    // The default parameters see past the transient.
    OracleReport d = cotrajectory_entropy(a);
    ASSERT_TRUE(d.ok());
    EXPECT_EQ(*d.entropy, yuzvinski_entropy(a));
}

TEST(Cotrajectory, SweepSummary) {
    Prime p(3);
    auto row = [](long m, std::vector<long> idx) { return make_sweep_row(m, std::move(idx), 3); };
    // Still growing at the last window.
    OracleReport grow = summarize_sweep(p, {row(0, {0, 1, 2, 3, 4}), row(1, {0, 2, 4, 6, 8})});
    EXPECT_FALSE(grow.ok());
    // Settled.
    OracleReport ok = summarize_sweep(p, {row(0, {0, 2, 4, 6, 8}), row(1, {0, 2, 4, 6, 8})});
    ASSERT_TRUE(ok.ok());
    EXPECT_EQ(*ok.entropy, EntropyValue::log_prime(p, 2));
    // One window unsettled.
    OracleReport bad = summarize_sweep(p, {row(0, {0, 1, 1, 2, 2}), row(1, {0, 2, 4, 6, 8})});
    EXPECT_FALSE(bad.ok());
}

TEST(Cotrajectory, ParamValidation) {
    PadicMatrix a = PadicMatrix::identity(Prime(3), 1);
    EXPECT_THROW(cotrajectory_entropy(a, {6, 10, 8}), InvalidArgument);
    EXPECT_THROW(cotrajectory_entropy(a, {-1, 40, 8}), InvalidArgument);
    EXPECT_THROW(cotrajectory_entropy(PadicMatrix(Prime(3), RationalMatrix(1, 2))), NonSquare);
}

TEST(InvariantBasis, Certificate) {
    Prime p(3);
    EXPECT_TRUE(invariant_basis_certificate(PadicMatrix(p, RationalMatrix::from_rows({{3, Rational(1, 2)}, {7, 1}}))));
    EXPECT_FALSE(invariant_basis_certificate(diag(p, {Rational(1, 3)})));
    EXPECT_TRUE(invariant_basis_certificate(PadicMatrix(p, RationalMatrix(2, 2))));
    random::Rng rng(53);
    for (int t = 0; t < 50; ++t) {
        PadicMatrix a = random::matrix(rng, p, 3, 0, 3);
        ASSERT_TRUE(invariant_basis_certificate(a));
        ASSERT_TRUE(yuzvinski_entropy(a).is_zero());
    }
}

TEST(OracleVsFormula, RandomSample) {
    random::Rng rng(54);
    for (std::uint64_t pv : {2, 3, 5})
        for (std::size_t n = 1; n <= 3; ++n)
            for (int t = 0; t < 8; ++t) {
                PadicMatrix a = random::matrix(rng, Prime(pv), n);
                OracleReport r = cotrajectory_entropy(a);
                ASSERT_TRUE(r.ok()) << r.diagnostic;
                ASSERT_EQ(*r.entropy, yuzvinski_entropy(a));
            }
}
