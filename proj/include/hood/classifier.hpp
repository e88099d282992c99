#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "hood/errors.hpp"
#include "hood/padic.hpp"

namespace hood {

// ---------------------------------------------------------------------------
// Descriptors of structured locally compact groups.

/// Compact part K of a compactly generated LCA group R^d + Z^m + K.
struct CompactPart {
    enum class Kind { Zero, Torus, ConnectedFiniteDim, ConnectedInfiniteDim, ProfiniteFromPParts, Unspecified };

    Kind kind = Kind::Zero;
    long dimension = 0;                 // s for Torus / ConnectedFiniteDim
    std::vector<std::uint64_t> primes;  // p-parts for ProfiniteFromPParts

    bool is_trivial() const {
        switch (kind) {
        case Kind::Zero: return true;
        case Kind::Torus:
        case Kind::ConnectedFiniteDim: return dimension == 0;
        case Kind::ProfiniteFromPParts: return primes.empty();
        default: return false;
        }
    }
    bool is_connected() const {
        return kind == Kind::Zero || kind == Kind::Torus || kind == Kind::ConnectedFiniteDim ||
               kind == Kind::ConnectedInfiniteDim || is_trivial();
    }
};

struct CompactlyGeneratedLCA {
    long d = 0;  // rank of the R^d factor
    long m = 0;  // rank of the Z^m factor
    CompactPart k;
};

/// Z_p^alpha x Q_p^beta x Z(p^inf)^gamma x E_p with rank_p(E_p) = delta.
struct PadicLCA {
    std::uint64_t p = 2;
    long alpha = 0, beta = 0, gamma = 0, delta = 0;

    friend bool operator==(const PadicLCA&, const PadicLCA&) = default;
};

struct HeisenbergDescriptor {
    std::uint64_t p = 2;
    long n = 1;
};

struct ProductOverPrimes {
    std::vector<PadicLCA> parts;
};

using GroupDescriptor = std::variant<CompactlyGeneratedLCA, PadicLCA, HeisenbergDescriptor, ProductOverPrimes>;

// ---------------------------------------------------------------------------

enum class EntropyClass { E0, FiniteNotE0, Finite, NotFinite, Unknown };
enum class Slenderness { Yes, No, NotApplicable, Unknown };

inline const char* to_string(EntropyClass c) {
    switch (c) {
    case EntropyClass::E0: return "E0";
    case EntropyClass::FiniteNotE0: return "FiniteNotE0";
    case EntropyClass::Finite: return "Finite";
    case EntropyClass::NotFinite: return "NotFinite";
    default: return "Unknown";
    }
}

inline const char* to_string(Slenderness s) {
    switch (s) {
    case Slenderness::Yes: return "Yes";
    case Slenderness::No: return "No";
    case Slenderness::NotApplicable: return "NotApplicable";
    default: return "Unknown";
    }
}

struct TraceEntry {
    std::string rule;
    std::string citation;
    friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

/// Fixed catalogue of rules the engine may cite. Every trace entry comes from
/// here.
inline const std::map<std::string, std::string>& citation_catalog() {
    static const std::map<std::string, std::string> catalog = {
        {"padic.finite-rank", "LCA p-groups of finite p-rank are Z_p^a x Q_p^b x Z(p^inf)^c x E_p; all lie in "
                              "E<inf, and exactly those with b = 0 lie in E0"},
        {"padic.invariant-basis", "Z_p^n has a local basis of invariant compact open subgroups, so every "
                                  "endomorphism has entropy 0 and Z_p^n is in E0"},
        {"padic.yuzvinski", "Yuzvinski formula on Q_p^n: entropy is the sum of log|lambda|_p over eigenvalues "
                            "with |lambda|_p > 1, always finite; x -> x/p gives log p"},
        {"padic.rank", "rank_p(Z_p^a x Q_p^b x Z(p^inf)^c x E_p) = a + b + c + d"},
        {"padic.duality", "the Pontryagin dual exchanges the Z_p and Z(p^inf) factors, so the p-rank is preserved"},
        {"heisenberg.entropy-class", "H_n(Q_p) is a periodic nonabelian p-group of class 2 lying in E<inf but "
                                     "not in E0"},
        {"heisenberg.rank", "rank_p(H_n(Q_p)) = 2n, read off the Frattini quotient"},
        {"product.sylow", "a periodic LCA group is in E0 iff all of its p-Sylow subgroups are"},
        {"product.entropy-sum", "entropy on a totally disconnected LCA group is the sum over primes of the "
                                "entropies on the p-components"},
        {"cglca.slender-e0", "a slender compactly generated LCA group lies in E0; conversely E0 with K = 0 "
                             "forces slenderness, which is not a slenderness test in itself"},
        {"cglca.connected-finite", "with K connected, R^d + Z^m + K is in E<inf iff it is R^d + Z^m + T^s; "
                                   "connected finite-dimensional compact abelian groups are tori"},
        {"cglca.infinite-dimension", "an LCA group in E<inf has finite dimension"},
        {"slender.products", "finite direct products of slender groups are slender, and Z is slender"},
        {"slender.reduced", "slender groups are reduced; R^d (d > 0) contains Q, so it is not slender"},
        {"slender.no-compact", "there are no nontrivial compact abelian slender groups, and subgroups of "
                               "slender groups are slender"},
        {"slender.not-applicable", "slenderness is a property of discrete torsion-free abelian groups; it is "
                                   "not decided for this descriptor"},
        {"rank.not-applicable", "p-rank is reported only for single-prime p-group descriptors"},
    };
    return catalog;
}

struct ClassificationResult {
    EntropyClass entropy_class = EntropyClass::Unknown;
    std::optional<long> p_rank;  // empty: not applicable
    Slenderness slender = Slenderness::Unknown;
    std::vector<TraceEntry> trace;

    void cite(const std::string& rule) {
        auto it = citation_catalog().find(rule);
        if (it == citation_catalog().end()) throw InvalidArgument("uncatalogued rule " + rule);
        TraceEntry e{rule, it->second};
        for (const auto& t : trace)
            if (t == e) return;
        trace.push_back(std::move(e));
    }

    bool cites(const std::string& rule) const {
        for (const auto& t : trace)
            if (t.rule == rule) return true;
        return false;
    }
};

// ---------------------------------------------------------------------------

namespace detail {

inline void check_padic(const PadicLCA& g) {
    if (!Prime::is_prime(g.p)) throw MalformedDescriptor(std::to_string(g.p) + " is not prime");
    if (g.alpha < 0 || g.beta < 0 || g.gamma < 0 || g.delta < 0)
        throw MalformedDescriptor("PadicLCA exponents must be nonnegative");
}

inline void check_descriptor(const GroupDescriptor& g) {
    std::visit(
        [](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, PadicLCA>) {
                check_padic(d);
            } else if constexpr (std::is_same_v<T, HeisenbergDescriptor>) {
                if (!Prime::is_prime(d.p)) throw MalformedDescriptor(std::to_string(d.p) + " is not prime");
                if (d.n < 1) throw MalformedDescriptor("Heisenberg rank n must be positive");
            } else if constexpr (std::is_same_v<T, ProductOverPrimes>) {
                std::set<std::uint64_t> seen;
                for (const auto& part : d.parts) {
                    check_padic(part);
                    if (!seen.insert(part.p).second)
                        throw MalformedDescriptor("prime " + std::to_string(part.p) + " repeated in product");
                }
            } else {
                if (d.d < 0 || d.m < 0 || d.k.dimension < 0)
                    throw MalformedDescriptor("ranks and dimensions must be nonnegative");
                for (auto p : d.k.primes)
                    if (!Prime::is_prime(p)) throw MalformedDescriptor(std::to_string(p) + " is not prime");
            }
        },
        g);
}

inline void slender_into(const GroupDescriptor& g, ClassificationResult& r) {
    if (const auto* cg = std::get_if<CompactlyGeneratedLCA>(&g)) {
        if (cg->d > 0) {
            r.slender = Slenderness::No;
            r.cite("slender.reduced");
        } else if (cg->k.kind == CompactPart::Kind::Unspecified) {
            r.slender = Slenderness::Unknown;
        } else if (!cg->k.is_trivial()) {
            r.slender = Slenderness::No;
            r.cite("slender.no-compact");
        } else {
            r.slender = Slenderness::Yes;
            r.cite("slender.products");
        }
        return;
    }
    r.slender = Slenderness::NotApplicable;
    r.cite("slender.not-applicable");
}

inline void classify_padic(const PadicLCA& g, ClassificationResult& r) {
    r.p_rank = g.alpha + g.beta + g.gamma + g.delta;
    r.cite("padic.rank");
    r.cite("padic.finite-rank");
    if (g.beta > 0) {
        r.entropy_class = EntropyClass::FiniteNotE0;
        r.cite("padic.yuzvinski");
    } else {
        r.entropy_class = EntropyClass::E0;
        if (g.alpha > 0) r.cite("padic.invariant-basis");
    }
}

} // namespace detail

/// Slenderness decision with its trace.
inline ClassificationResult is_slender(const GroupDescriptor& g) {
    detail::check_descriptor(g);
    ClassificationResult r;
    detail::slender_into(g, r);
    return r;
}

inline long p_rank(const GroupDescriptor& g) {
    detail::check_descriptor(g);
    if (const auto* pd = std::get_if<PadicLCA>(&g)) return pd->alpha + pd->beta + pd->gamma + pd->delta;
    if (const auto* hd = std::get_if<HeisenbergDescriptor>(&g)) return 2 * hd->n;
    throw NotApplicable("p-rank is defined for PadicLCA and Heisenberg descriptors only");
}

inline PadicLCA pontryagin_dual(const PadicLCA& g) {
    detail::check_padic(g);
    return {g.p, g.gamma, g.beta, g.alpha, g.delta};
}

/// Rule engine. Never extrapolates: anything without a citable rule is Unknown.
inline ClassificationResult classify(const GroupDescriptor& g) {
    detail::check_descriptor(g);
    ClassificationResult r;

    if (const auto* pd = std::get_if<PadicLCA>(&g)) {
        detail::classify_padic(*pd, r);
    } else if (const auto* hd = std::get_if<HeisenbergDescriptor>(&g)) {
        r.entropy_class = EntropyClass::FiniteNotE0;
        r.cite("heisenberg.entropy-class");
        r.p_rank = 2 * hd->n;
        r.cite("heisenberg.rank");
    } else if (const auto* prod = std::get_if<ProductOverPrimes>(&g)) {
        bool all_e0 = true;
        for (const auto& part : prod->parts) {
            ClassificationResult sub;
            detail::classify_padic(part, sub);
            if (sub.entropy_class != EntropyClass::E0) all_e0 = false;
            for (const auto& t : sub.trace) r.cite(t.rule);
        }
        r.cite("product.sylow");
        if (all_e0) {
            r.entropy_class = EntropyClass::E0;
        } else {
            r.entropy_class = EntropyClass::FiniteNotE0;
            r.cite("product.entropy-sum");
        }
        if (prod->parts.size() == 1) {
            r.p_rank = p_rank(GroupDescriptor{prod->parts.front()});
        } else {
            r.cite("rank.not-applicable");
        }
    } else {
        const auto& cg = std::get<CompactlyGeneratedLCA>(g);
        r.cite("rank.not-applicable");
        if (cg.d == 0 && cg.k.is_trivial()) {
            r.entropy_class = EntropyClass::E0;
            r.cite("cglca.slender-e0");
        } else if (cg.k.kind == CompactPart::Kind::ConnectedInfiniteDim) {
            r.entropy_class = EntropyClass::NotFinite;
            r.cite("cglca.infinite-dimension");
        } else if (cg.k.is_connected()) {
            r.entropy_class = EntropyClass::Finite;
            r.cite("cglca.connected-finite");
        }
    }

    detail::slender_into(g, r);
    return r;
}

} // namespace hood
