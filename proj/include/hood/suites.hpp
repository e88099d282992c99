#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "hood/classifier.hpp"
#include "hood/cotrajectory.hpp"
#include "hood/finite_group.hpp"
#include "hood/heisenberg.hpp"
#include "hood/newton.hpp"
#include "hood/random.hpp"

namespace hood::suites {

struct CaseRow {
    std::string label;
    bool passed = false;
    std::string detail;
};

struct SuiteResult {
    std::string name;
    std::vector<CaseRow> rows;

    bool passed() const {
        for (const auto& r : rows)
            if (!r.passed) return false;
        return !rows.empty();
    }

    std::string table() const {
        std::ostringstream os;
        os << "suite " << name << "\n";
        for (const auto& r : rows)
            os << "  " << (r.passed ? "PASS" : "FAIL") << "  " << r.label << "  " << r.detail << "\n";
        os << (passed() ? "PASSED" : "FAILED") << "\n";
        return os.str();
    }
};

inline const std::vector<std::string>& names() {
    static const std::vector<std::string> n = {"oracle-vs-formula", "heisenberg", "finite-groups", "classifier"};
    return n;
}

// ---------------------------------------------------------------------------

/// 50 seeded random matrices per (p, n) in {2,3,5} x {1,2,3}: the oracle must
/// match the Newton-polygon formula whenever it stabilizes, and at least 95%
/// of instances must stabilize.
inline SuiteResult oracle_vs_formula(std::uint64_t seed, const OracleParams& params = {}, int per_cell = 50) {
    SuiteResult res{"oracle-vs-formula", {}};
    random::Rng rng(seed);
    long total = 0, stabilized = 0, mismatches = 0;
    for (std::uint64_t pv : {2, 3, 5})
        for (std::size_t n = 1; n <= 3; ++n) {
            Prime p(pv);
            long cell_stab = 0, cell_bad = 0;
            std::string first_bad;
            for (int t = 0; t < per_cell; ++t) {
                PadicMatrix a = random::matrix(rng, p, n);
                EntropyValue formula = yuzvinski_entropy(a);
                OracleReport oracle = cotrajectory_entropy(a, params);
                ++total;
                if (!oracle.ok()) {
                    if (oracle.entropy) ++cell_bad;  // a value must never accompany NotStabilized
                    continue;
                }
                ++cell_stab;
                if (!(*oracle.entropy == formula)) {
                    ++cell_bad;
                    if (first_bad.empty())
                        first_bad = "instance " + std::to_string(t) + ": formula " + formula.to_string() +
                                    " oracle " + oracle.entropy->to_string();
                }
            }
            stabilized += cell_stab;
            mismatches += cell_bad;
            std::ostringstream label, detail;
            label << "p=" << pv << " n=" << n;
            detail << cell_stab << "/" << per_cell << " stabilized, " << cell_bad << " mismatches";
            if (!first_bad.empty()) detail << " (" << first_bad << ")";
            res.rows.push_back({label.str(), cell_bad == 0, detail.str()});
        }
    std::ostringstream detail;
    detail << stabilized << "/" << total << " stabilized";
    res.rows.push_back({"stabilization rate >= 95%", stabilized * 100 >= total * 95, detail.str()});
    return res;
}

/// 20 seeded valid graded endomorphisms per (p, n) in {2,3,5} x {1,2}: the
/// decomposition formula equals the filtration oracle, and each cell has a
/// positive-entropy witness.
inline SuiteResult heisenberg(std::uint64_t seed, const OracleParams& params = {}, int per_cell = 20) {
    SuiteResult res{"heisenberg", {}};
    random::Rng rng(seed);
    for (std::uint64_t pv : {2, 3, 5})
        for (std::size_t n = 1; n <= 2; ++n) {
            Prime p(pv);
            int agree = 0, positive = 0, invalid = 0;
            std::string first_bad;
            for (int t = 0; t < per_cell; ++t) {
                GradedEndo e = [&] {
                    if (t == 0) {
                        // Fixed witness: A -> A/p on the first coordinate, B -> pB.
                        RationalMatrix l = RationalMatrix::identity(2 * n);
                        l(0, 0) = prime_power(p, -1);
                        l(n, n) = prime_power(p, 1);
                        return GradedEndo{n, PadicMatrix(p, l), PadicScalar::one(p), std::nullopt};
                    }
                    return random::graded_endo(rng, p, n, t % 5 == 4);
                }();
                if (!validate_graded_endo(e)) {
                    ++invalid;
                    continue;
                }
                EntropyValue formula = heisenberg_entropy(e);
                OracleReport oracle = heisenberg_cotrajectory_oracle(e, params);
                if (formula.is_positive()) ++positive;
                if (oracle.ok() && *oracle.entropy == formula) {
                    ++agree;
                } else if (first_bad.empty()) {
                    first_bad = "instance " + std::to_string(t) + ": formula " + formula.to_string() + " oracle " +
                                (oracle.ok() ? oracle.entropy->to_string() : oracle.diagnostic);
                }
            }
            std::ostringstream label, detail;
            label << "p=" << pv << " n=" << n;
            detail << agree << "/" << per_cell << " agree, " << positive << " positive, " << invalid << " invalid";
            if (!first_bad.empty()) detail << " (" << first_bad << ")";
            res.rows.push_back({label.str(), agree == per_cell && positive > 0 && invalid == 0, detail.str()});
        }
    return res;
}

/// Frattini ranks of finite Heisenberg truncations, and Frat = Z for H_1(Z/p)
/// with p odd.
inline SuiteResult finite_groups() {
    SuiteResult res{"finite-groups", {}};
    struct Cell { std::uint64_t p; unsigned k, n; };
    std::vector<Cell> cells;
    for (std::uint64_t p : {2, 3, 5})
        for (unsigned k : {1u, 2u}) cells.push_back({p, k, 1});
    for (std::uint64_t p : {2, 3}) cells.push_back({p, 1, 2});
    for (const auto& c : cells) {
        FiniteGroup g = finite_heisenberg_group(Prime(c.p), c.k, c.n);
        auto fr = frattini_and_rank(g);
        std::ostringstream label, detail;
        label << "H_" << c.n << "(Z/" << c.p << "^" << c.k << ")";
        detail << "order " << g.order() << ", |Frat| " << fr.frattini.order() << ", rank " << fr.rank
               << " (expected " << 2 * c.n << ")";
        res.rows.push_back({label.str(), fr.rank == static_cast<long>(2 * c.n), detail.str()});
    }
    for (std::uint64_t p : {3, 5}) {
        FiniteGroup g = finite_heisenberg_group(Prime(p), 1, 1);
        auto fr = frattini_and_rank(g);
        FiniteGroup z = g.center();
        std::ostringstream label, detail;
        label << "Frat(H_1(Z/" << p << ")) = Z";
        detail << "|Frat| " << fr.frattini.order() << ", |Z| " << z.order();
        res.rows.push_back({label.str(), fr.frattini == z, detail.str()});
    }
    return res;
}

/// Table-driven classifier cases with their expected citations.
inline SuiteResult classifier() {
    SuiteResult res{"classifier", {}};
    auto add = [&](std::string label, bool ok, std::string detail = {}) {
        res.rows.push_back({std::move(label), ok, std::move(detail)});
    };

    auto zp = classify(PadicLCA{3, 1, 0, 0, 0});
    add("Z_p -> E0", zp.entropy_class == EntropyClass::E0 && zp.cites("padic.invariant-basis"),
        to_string(zp.entropy_class));

    auto qp = classify(PadicLCA{3, 0, 1, 0, 0});
    add("Q_p -> FiniteNotE0",
        qp.entropy_class == EntropyClass::FiniteNotE0 && qp.cites("padic.yuzvinski") && qp.cites("padic.finite-rank"),
        to_string(qp.entropy_class));

    CompactlyGeneratedLCA rzt{1, 2, {CompactPart::Kind::Torus, 3, {}}};
    auto t = classify(rzt);
    add("R + Z^2 + T^3 -> E<inf", t.entropy_class == EntropyClass::Finite && t.cites("cglca.connected-finite"),
        to_string(t.entropy_class));

    CompactlyGeneratedLCA z5{0, 5, {}};
    auto zm = classify(z5);
    add("Z^5 -> E0, slender",
        zm.entropy_class == EntropyClass::E0 && zm.slender == Slenderness::Yes && zm.cites("cglca.slender-e0") &&
            zm.cites("slender.products"),
        std::string(to_string(zm.entropy_class)) + ", slender " + to_string(zm.slender));

    auto h = classify(HeisenbergDescriptor{3, 2});
    add("H_2(Q_3) -> FiniteNotE0, rank 4",
        h.entropy_class == EntropyClass::FiniteNotE0 && h.p_rank == 4 && h.cites("heisenberg.entropy-class") &&
            h.cites("heisenberg.rank"),
        std::string(to_string(h.entropy_class)) + ", rank " + (h.p_rank ? std::to_string(*h.p_rank) : "-"));

    add("rank {2,1,0,3} = 6", p_rank(PadicLCA{5, 2, 1, 0, 3}) == 6);
    add("rank H_1 = 2", p_rank(HeisenbergDescriptor{5, 1}) == 2);
    add("rank of trivial = 0", p_rank(PadicLCA{5, 0, 0, 0, 0}) == 0);

    PadicLCA g{7, 2, 1, 0, 0};
    PadicLCA dg = pontryagin_dual(g);
    add("dual swaps alpha and gamma", dg == PadicLCA{7, 0, 1, 2, 0});
    add("dual preserves rank", p_rank(dg) == p_rank(g));
    PadicLCA self{7, 3, 1, 3, 2};
    add("self-dual fixed", pontryagin_dual(self) == self);
    add("dual is an involution", pontryagin_dual(pontryagin_dual(g)) == g);

    auto s1 = is_slender(CompactlyGeneratedLCA{0, 3, {}});
    auto s2 = is_slender(CompactlyGeneratedLCA{0, 0, {CompactPart::Kind::Torus, 1, {}}});
    auto s3 = is_slender(CompactlyGeneratedLCA{2, 0, {}});
    add("Z^3 slender", s1.slender == Slenderness::Yes && s1.cites("slender.products"));
    add("T not slender", s2.slender == Slenderness::No && s2.cites("slender.no-compact"));
    add("R^2 not slender", s3.slender == Slenderness::No && s3.cites("slender.reduced"));

    ProductOverPrimes mixed{{PadicLCA{2, 1, 0, 0, 0}, PadicLCA{3, 0, 1, 0, 0}}};
    ProductOverPrimes compact{{PadicLCA{2, 1, 0, 0, 0}, PadicLCA{3, 2, 0, 1, 1}}};
    add("product with a Q_p part not E0", classify(mixed).entropy_class == EntropyClass::FiniteNotE0);
    add("product of E0 parts is E0", classify(compact).entropy_class == EntropyClass::E0);
    return res;
}

inline SuiteResult run(const std::string& name, std::uint64_t seed, const OracleParams& params = {}) {
    if (name == "oracle-vs-formula") return oracle_vs_formula(seed, params);
    if (name == "heisenberg") return heisenberg(seed, params);
    if (name == "finite-groups") return finite_groups();
    if (name == "classifier") return classifier();
    throw InvalidArgument("unknown suite '" + name + "'");
}

} // namespace hood::suites
