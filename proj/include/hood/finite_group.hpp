#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hood/heisenberg.hpp"
#include "hood/padic.hpp"

namespace hood {

/// Ambient finite p-group: elements are coordinate tuples packed into a
/// mixed-radix code, with a multiplication on codes.
struct FiniteGroupModel {
    Prime prime;
    std::string name;
    std::vector<std::uint64_t> radices;  // per-coordinate modulus
    std::function<std::uint64_t(std::uint64_t, std::uint64_t)> mul;
    std::uint64_t identity = 0;

    std::vector<std::uint64_t> decode(std::uint64_t code) const {
        std::vector<std::uint64_t> out(radices.size());
        for (std::size_t i = 0; i < radices.size(); ++i) {
            out[i] = code % radices[i];
            code /= radices[i];
        }
        return out;
    }

    std::uint64_t encode(const std::vector<std::uint64_t>& coords) const {
        std::uint64_t code = 0;
        for (std::size_t i = radices.size(); i-- > 0;) code = code * radices[i] + coords[i];
        return code;
    }
};

/// A subgroup of a finite p-group model, held as its generators and its
/// fully enumerated, sorted element list.
class FiniteGroup {
public:
    using Code = std::uint64_t;

    static constexpr std::size_t default_budget = 1'000'000;

    /// Subgroup of `model` generated by `generators` (closure by BFS).
    FiniteGroup(std::shared_ptr<const FiniteGroupModel> model, std::vector<Code> generators,
                std::size_t budget = default_budget)
        : model_(std::move(model)), generators_(std::move(generators)) {
        std::unordered_set<Code> seen{model_->identity};
        std::deque<Code> queue{model_->identity};
        while (!queue.empty()) {
            Code x = queue.front();
            queue.pop_front();
            for (Code g : generators_) {
                Code y = model_->mul(x, g);
                if (seen.insert(y).second) {
                    if (seen.size() > budget) throw BudgetExceeded("subgroup closure exceeded the element budget");
                    queue.push_back(y);
                }
            }
        }
        elements_.assign(seen.begin(), seen.end());
        std::sort(elements_.begin(), elements_.end());
    }

    const FiniteGroupModel& model() const noexcept { return *model_; }
    const std::shared_ptr<const FiniteGroupModel>& model_ptr() const noexcept { return model_; }
    Prime prime() const noexcept { return model_->prime; }
    std::size_t order() const noexcept { return elements_.size(); }
    const std::vector<Code>& elements() const noexcept { return elements_; }
    const std::vector<Code>& generators() const noexcept { return generators_; }

    bool contains(Code x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }

    bool contains(const FiniteGroup& h) const {
        return std::all_of(h.elements_.begin(), h.elements_.end(), [&](Code x) { return contains(x); });
    }

    Code mul(Code x, Code y) const { return model_->mul(x, y); }

    Code power(Code x, std::uint64_t e) const {
        Code acc = model_->identity;
        Code base = x;
        while (e) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }

    /// x^{-1} = x^{|G|-1}.
    Code inverse(Code x) const { return power(x, order() - 1); }

    Code commutator(Code x, Code y) const { return mul(mul(mul(x, y), inverse(x)), inverse(y)); }

    FiniteGroup subgroup(std::vector<Code> gens) const { return FiniteGroup(model_, std::move(gens)); }

    /// Subgroup generated by `candidates`, keeping only those generators that
    /// enlarge the group seen so far (at most log_p |G| closures).
    FiniteGroup generated_by(const std::vector<Code>& candidates) const {
        FiniteGroup cur(model_, {});
        std::vector<Code> gens;
        for (Code x : candidates) {
            if (cur.contains(x)) continue;
            gens.push_back(x);
            cur = FiniteGroup(model_, gens);
        }
        return cur;
    }

    /// Smallest subgroup containing `h` and normalized by this group.
    FiniteGroup normal_closure(const FiniteGroup& h) const {
        std::vector<Code> gens = h.generators_;
        FiniteGroup cur = h;
        if (gens.empty()) return cur;
        for (;;) {
            bool grew = false;
            for (Code x : std::vector<Code>(cur.generators_))
                for (Code g : generators_) {
                    Code conj = mul(mul(g, x), inverse(g));
                    if (!cur.contains(conj)) {
                        gens.push_back(conj);
                        grew = true;
                    }
                }
            if (!grew) return cur;
            cur = generated_by(gens);
            gens = cur.generators_;
        }
    }

    FiniteGroup center() const {
        std::vector<Code> z;
        for (Code x : elements_) {
            bool central = std::all_of(generators_.begin(), generators_.end(),
                                       [&](Code g) { return mul(x, g) == mul(g, x); });
            if (central) z.push_back(x);
        }
        return generated_by(z);
    }

    /// log_p of the order; throws if the order is not a power of p.
    long log_order() const { return log_p_exact(order()); }

    long log_p_exact(std::uint64_t n) const {
        long e = 0;
        while (n > 1) {
            if (n % prime().value() != 0) throw InvalidArgument("group order is not a power of p");
            n /= prime().value();
            ++e;
        }
        return e;
    }

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.elements_ == b.elements_; }

private:
    std::shared_ptr<const FiniteGroupModel> model_;
    std::vector<Code> generators_;
    std::vector<Code> elements_;
};

/// H_n(Z/p^k) with its 2n + 1 standard generators (unit A_i, unit B_i and the
/// central M(0,0;1)). Coordinates are (A_1..A_n, B_1..B_n, c).
inline FiniteGroup finite_heisenberg_group(Prime p, unsigned k, unsigned n,
                                           std::size_t budget = FiniteGroup::default_budget) {
    if (n == 0 || k == 0) throw InvalidArgument("need n >= 1 and k >= 1");
    ZmodRing ring(p, k);
    double size = 1;
    for (unsigned i = 0; i < 2 * n + 1; ++i) size *= static_cast<double>(ring.modulus);
    if (size > static_cast<double>(budget))
        throw BudgetExceeded("H_" + std::to_string(n) + "(" + ring.describe() + ") exceeds the element budget");

    auto model = std::make_shared<FiniteGroupModel>(FiniteGroupModel{p, "H_" + std::to_string(n) + "(" + ring.describe() + ")",
                                                                     std::vector<std::uint64_t>(2 * n + 1, ring.modulus), {}, 0});
    const FiniteGroupModel* raw = model.get();
    model->mul = [raw, ring, n](std::uint64_t x, std::uint64_t y) {
        auto cx = raw->decode(x), cy = raw->decode(y);
        ZmodElement ex{ring, {cx.begin(), cx.begin() + n}, {cx.begin() + n, cx.begin() + 2 * n}, cx[2 * n]};
        ZmodElement ey{ring, {cy.begin(), cy.begin() + n}, {cy.begin() + n, cy.begin() + 2 * n}, cy[2 * n]};
        ZmodElement ez = h_mul(ex, ey);
        std::vector<std::uint64_t> cz(ez.a.begin(), ez.a.end());
        cz.insert(cz.end(), ez.b.begin(), ez.b.end());
        cz.push_back(ez.c);
        return raw->encode(cz);
    };

    std::vector<std::uint64_t> gens;
    for (unsigned i = 0; i < 2 * n + 1; ++i) {
        std::vector<std::uint64_t> e(2 * n + 1, 0);
        e[i] = 1;
        gens.push_back(model->encode(e));
    }
    return FiniteGroup(std::move(model), std::move(gens), budget);
}

/// Cyclic group Z/p^k.
inline FiniteGroup cyclic_group(Prime p, unsigned k, std::size_t budget = FiniteGroup::default_budget) {
    ZmodRing ring(p, k);
    if (ring.modulus > budget) throw BudgetExceeded("cyclic group exceeds the element budget");
    auto model = std::make_shared<FiniteGroupModel>(
        FiniteGroupModel{p, "Z/" + std::to_string(ring.modulus), {ring.modulus}, {}, 0});
    model->mul = [ring](std::uint64_t x, std::uint64_t y) { return ring.add(x, y); };
    return FiniteGroup(std::move(model), {1}, budget);
}

struct FrattiniResult {
    FiniteGroup frattini;
    long rank;  // log_p |G / Frat(G)|
};

/// Frat(G) = G^p [G, G] for a finite p-group: generated by all p-th powers
/// and the commutators of generators, closed under conjugation.
inline FrattiniResult frattini_and_rank(const FiniteGroup& g) {
    std::vector<FiniteGroup::Code> gens;
    std::unordered_set<FiniteGroup::Code> seen;
    auto push = [&](FiniteGroup::Code x) {
        if (x != g.model().identity && seen.insert(x).second) gens.push_back(x);
    };
    for (auto x : g.elements()) push(g.power(x, g.prime().value()));
    for (auto x : g.generators())
        for (auto y : g.generators()) push(g.commutator(x, y));
    FiniteGroup phi = g.normal_closure(g.generated_by(gens));
    long rank = g.log_p_exact(g.order() / phi.order());
    return {std::move(phi), rank};
}

struct OmegaSeries {
    FiniteGroup lower;  // Ω_k: generated by elements with x^{p^k} = 1
    FiniteGroup upper;  // Ω^k: generated by all p^k-th powers
};

inline OmegaSeries omega_series(const FiniteGroup& g, unsigned k) {
    std::uint64_t pk = 1;
    for (unsigned i = 0; i < k; ++i) pk *= g.prime().value();
    std::vector<FiniteGroup::Code> low, up;
    std::unordered_set<FiniteGroup::Code> up_seen;
    for (auto x : g.elements()) {
        auto y = g.power(x, pk);
        if (y == g.model().identity) low.push_back(x);
        else if (up_seen.insert(y).second) up.push_back(y);
    }
    return {g.generated_by(low), g.generated_by(up)};
}

} // namespace hood
