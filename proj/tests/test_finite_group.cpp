#include <gtest/gtest.h>

#include "hood/finite_group.hpp"

using namespace hood;

namespace {

// Frat(H_n(Z/p^k)) by hand: A and B coordinates divisible by p, c arbitrary.
bool in_hand_frattini(const FiniteGroup& g, FiniteGroup::Code x) {
    auto c = g.model().decode(x);
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
        if (c[i] % g.prime().value() != 0) return false;
    return true;
}

} // namespace

TEST(FiniteHeisenberg, Orders) {
    EXPECT_EQ(finite_heisenberg_group(Prime(3), 1, 1).order(), 27u);
    EXPECT_EQ(finite_heisenberg_group(Prime(2), 1, 2).order(), 32u);
    EXPECT_EQ(finite_heisenberg_group(Prime(3), 2, 1).order(), 729u);
}

TEST(FiniteHeisenberg, GroupAxiomsBruteForce) {
    FiniteGroup g = finite_heisenberg_group(Prime(2), 2, 1);  // order 64
    const auto& el = g.elements();
    FiniteGroup z = g.center();
    for (auto x : el) {
        ASSERT_EQ(g.mul(x, g.inverse(x)), g.model().identity);
        for (auto y : el) {
            ASSERT_TRUE(g.contains(g.mul(x, y)));
            ASSERT_TRUE(z.contains(g.commutator(x, y)));
        }
    }
    for (std::size_t i = 0; i < el.size(); i += 3)
        for (std::size_t j = 0; j < el.size(); j += 5)
            for (std::size_t k = 0; k < el.size(); k += 7)
                ASSERT_EQ(g.mul(g.mul(el[i], el[j]), el[k]), g.mul(el[i], g.mul(el[j], el[k])));
}

TEST(FiniteHeisenberg, CenterIsTheCentralCoordinate) {
    for (std::uint64_t pv : {2, 3})
        for (unsigned k : {1u, 2u}) {
            FiniteGroup g = finite_heisenberg_group(Prime(pv), k, 1);
            FiniteGroup z = g.center();
            std::uint64_t pk = 1;
            for (unsigned i = 0; i < k; ++i) pk *= pv;
            EXPECT_EQ(z.order(), pk);
            for (auto x : z.elements()) {
                auto c = g.model().decode(x);
                EXPECT_EQ(c[0], 0u);
                EXPECT_EQ(c[1], 0u);
            }
        }
}

TEST(Frattini, RanksAreTwoN) {
    struct Cell { std::uint64_t p; unsigned k, n; };
    for (Cell c : {Cell{2, 1, 1}, Cell{3, 1, 1}, Cell{5, 1, 1}, Cell{2, 2, 1}, Cell{3, 2, 1}, Cell{5, 2, 1},
                   Cell{2, 1, 2}, Cell{3, 1, 2}}) {
        FiniteGroup g = finite_heisenberg_group(Prime(c.p), c.k, c.n);
        auto fr = frattini_and_rank(g);
        EXPECT_EQ(fr.rank, static_cast<long>(2 * c.n)) << g.model().name;
        // Membership matches the hand description.
        std::size_t count = 0;
        for (auto x : g.elements()) {
            bool hand = in_hand_frattini(g, x);
            count += hand;
            ASSERT_EQ(fr.frattini.contains(x), hand) << g.model().name;
        }
        EXPECT_EQ(fr.frattini.order(), count);
    }
}

TEST(Frattini, EqualsCenterAtLevelOne) {
    for (std::uint64_t pv : {2, 3, 5}) {
        FiniteGroup g = finite_heisenberg_group(Prime(pv), 1, 1);
        EXPECT_EQ(frattini_and_rank(g).frattini, g.center());
    }
}

TEST(Frattini, CyclicHasRankOne) {
    for (std::uint64_t pv : {2, 3, 5}) {
        auto fr = frattini_and_rank(cyclic_group(Prime(pv), 2));
        EXPECT_EQ(fr.rank, 1);
        EXPECT_EQ(fr.frattini.order(), pv);
    }
}

TEST(Omega, Cyclic) {
    for (std::uint64_t pv : {2, 3, 5}) {
        FiniteGroup g = cyclic_group(Prime(pv), 2);
        auto om = omega_series(g, 1);
        // Both are pZ/p^2.
        EXPECT_EQ(om.lower.order(), pv);
        EXPECT_EQ(om.upper.order(), pv);
        EXPECT_EQ(om.lower, om.upper);
        EXPECT_TRUE(om.lower.contains(pv));
    }
}

TEST(Omega, HeisenbergOddPrimeHasExponentP) {
    for (std::uint64_t pv : {3, 5}) {
        FiniteGroup g = finite_heisenberg_group(Prime(pv), 1, 1);
        for (auto x : g.elements()) ASSERT_EQ(g.power(x, pv), g.model().identity);
        auto om = omega_series(g, 1);
        EXPECT_EQ(om.upper.order(), 1u);
        EXPECT_EQ(om.lower, g);
    }
}

TEST(Omega, HeisenbergOverZmod4) {
    FiniteGroup g = finite_heisenberg_group(Prime(2), 2, 1);
    auto om = omega_series(g, 1);
    for (auto x : g.generators()) EXPECT_TRUE(om.upper.contains(g.power(x, 2)));
    EXPECT_TRUE(g.contains(om.upper));
    EXPECT_TRUE(g.contains(om.lower));
    // Squares of M(1,0;0) and M(0,1;0) are M(2,0;0) and M(0,2;0).
    EXPECT_TRUE(om.upper.contains(g.model().encode({2, 0, 0})));
    EXPECT_TRUE(om.upper.contains(g.model().encode({0, 2, 0})));
}

TEST(FiniteGroup, Budget) {
    EXPECT_THROW(finite_heisenberg_group(Prime(3), 1, 2, 100), BudgetExceeded);
    EXPECT_THROW(finite_heisenberg_group(Prime(5), 2, 2), BudgetExceeded);
    EXPECT_THROW(finite_heisenberg_group(Prime(3), 0, 1), InvalidArgument);
}
