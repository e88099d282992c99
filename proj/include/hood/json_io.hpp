#pragma once

#include <nlohmann/json.hpp>

#include <initializer_list>
#include <set>
#include <string>
#include <vector>

#include "hood/classifier.hpp"
#include "hood/cotrajectory.hpp"
#include "hood/entropy_value.hpp"
#include "hood/finite_group.hpp"
#include "hood/heisenberg.hpp"
#include "hood/matrix.hpp"

namespace hood::json_io {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Strict field access. Every failure is a SchemaError.

inline void require_object(const json& j, const std::string& what) {
    if (!j.is_object()) throw SchemaError(what + " must be a JSON object");
}

inline void allow_only(const json& j, std::initializer_list<const char*> fields, const std::string& what) {
    std::set<std::string> ok(fields.begin(), fields.end());
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!ok.count(it.key())) throw SchemaError("unknown field '" + it.key() + "' in " + what);
}

inline const json& field(const json& j, const char* name, const std::string& what) {
    auto it = j.find(name);
    if (it == j.end()) throw SchemaError("missing field '" + std::string(name) + "' in " + what);
    return *it;
}

inline long get_int(const json& j, const char* name, const std::string& what) {
    const json& v = field(j, name, what);
    if (!v.is_number_integer()) throw SchemaError("field '" + std::string(name) + "' in " + what + " must be an integer");
    return v.get<long>();
}

inline long get_int_or(const json& j, const char* name, long fallback, const std::string& what) {
    return j.contains(name) ? get_int(j, name, what) : fallback;
}

inline Prime get_prime(const json& j, const char* name, const std::string& what) {
    long p = get_int(j, name, what);
    if (p < 2 || !Prime::is_prime(static_cast<std::uint64_t>(p)))
        throw SchemaError("field '" + std::string(name) + "' in " + what + " must be a prime");
    return Prime(static_cast<std::uint64_t>(p));
}

/// Scalars may be given as strings in the scalar grammar or as integers.
inline Rational get_scalar(const json& v, Prime p, const std::string& what) {
    try {
        if (v.is_string()) return parse_rational(v.get<std::string>(), p);
        if (v.is_number_integer()) return Rational(v.get<long>());
    } catch (const Error& e) {
        throw SchemaError("bad scalar in " + what + ": " + e.what());
    }
    throw SchemaError("scalars in " + what + " must be strings or integers");
}

inline PadicMatrix get_matrix(const json& v, Prime p, const std::string& what) {
    if (!v.is_array() || v.empty()) throw SchemaError(what + " must be a nonempty array of rows");
    std::vector<std::vector<Rational>> rows;
    for (const auto& row : v) {
        if (!row.is_array()) throw SchemaError(what + " rows must be arrays");
        std::vector<Rational> r;
        for (const auto& x : row) r.push_back(get_scalar(x, p, what));
        if (!rows.empty() && r.size() != rows.front().size()) throw SchemaError(what + " has ragged rows");
        rows.push_back(std::move(r));
    }
    return {p, RationalMatrix::from_rows(rows)};
}

// ---------------------------------------------------------------------------
// Values -> JSON

inline json to_json(const EntropyValue& e) {
    json terms = json::array();
    for (const auto& [p, q] : e.terms()) terms.push_back({{"p", p}, {"coeff", q.get_str()}});
    return {{"terms", terms},
            {"infinite", e.is_infinite()},
            {"exact", e.to_string()},
            {"decimal", e.decimal(20)},
            {"decimal_note", "display only"}};
}

inline EntropyValue entropy_from_json(const json& j) {
    require_object(j, "entropy value");
    EntropyValue e;
    if (j.value("infinite", false)) return EntropyValue::infinity();
    for (const auto& t : field(j, "terms", "entropy value")) {
        Prime p = get_prime(t, "p", "entropy term");
        const json& c = field(t, "coeff", "entropy term");
        if (!c.is_string()) throw SchemaError("entropy coefficients are strings");
        e.add_term(p, parse_rational(c.get<std::string>(), p));
    }
    return e;
}

inline json to_json(const PadicMatrix& m) { return m.to_strings(); }

inline json to_json(const RationalMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).get_str());
        rows.push_back(r);
    }
    return rows;
}

inline json to_json(const PadicPolynomial& f) {
    json c = json::array();
    for (const auto& x : f.coeffs) c.push_back(x.get_str());
    return c;
}

inline json to_json(const NewtonPolygon& np) {
    json segs = json::array();
    for (const auto& s : np.segments) segs.push_back({{"slope", s.slope.get_str()}, {"length", s.length}});
    return {{"segments", segs}, {"zero_roots", np.zero_roots}};
}

inline json to_json(const OracleReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows) {
        json jr = {{"m", row.scale}, {"log_indices", row.log_indices}, {"increments", row.increments}};
        jr["rate"] = row.rate ? json(*row.rate) : json(nullptr);
        rows.push_back(jr);
    }
    json out = {{"stabilized", r.ok()}, {"evidence", rows}};
    if (r.entropy) out["entropy"] = to_json(*r.entropy);
    if (!r.diagnostic.empty()) out["diagnostic"] = r.diagnostic;
    return out;
}

inline json to_json(const PadicLCA& g) {
    return {{"kind", "PadicLCA"}, {"p", g.p}, {"alpha", g.alpha}, {"beta", g.beta}, {"gamma", g.gamma}, {"delta", g.delta}};
}

inline json to_json(const ClassificationResult& r) {
    json trace = json::array();
    for (const auto& t : r.trace) trace.push_back({{"rule", t.rule}, {"citation", t.citation}});
    return {{"entropy_class", to_string(r.entropy_class)},
            {"p_rank", r.p_rank ? json(*r.p_rank) : json("NotApplicable")},
            {"slender", to_string(r.slender)},
            {"trace", trace}};
}

inline json to_json(const FiniteGroup& g) {
    json elems = json::array();
    for (auto x : g.elements()) elems.push_back(g.model().decode(x));
    return {{"order", g.order()}, {"elements", elems}};
}

// ---------------------------------------------------------------------------
// Descriptors

inline PadicLCA padic_from_json(const json& j, const std::string& what) {
    require_object(j, what);
    allow_only(j, {"kind", "p", "alpha", "beta", "gamma", "delta"}, what);
    if (j.contains("kind") && j.at("kind") != "PadicLCA") throw SchemaError(what + " must be a PadicLCA");
    PadicLCA g;
    g.p = static_cast<std::uint64_t>(get_int(j, "p", what));
    g.alpha = get_int_or(j, "alpha", 0, what);
    g.beta = get_int_or(j, "beta", 0, what);
    g.gamma = get_int_or(j, "gamma", 0, what);
    g.delta = get_int_or(j, "delta", 0, what);
    return g;
}

inline CompactPart compact_part_from_json(const json& j) {
    const std::string what = "compact part";
    CompactPart k;
    if (j.is_string()) {
        if (j == "Zero") return k;
        if (j == "Unspecified") { k.kind = CompactPart::Kind::Unspecified; return k; }
        if (j == "ConnectedInfiniteDim") { k.kind = CompactPart::Kind::ConnectedInfiniteDim; return k; }
        throw SchemaError("compact part '" + j.get<std::string>() + "' needs an object form");
    }
    require_object(j, what);
    allow_only(j, {"kind", "s", "primes"}, what);
    const json& kind = field(j, "kind", what);
    if (!kind.is_string()) throw SchemaError("compact part kind must be a string");
    const std::string ks = kind.get<std::string>();
    if (ks == "Zero") k.kind = CompactPart::Kind::Zero;
    else if (ks == "Torus") k.kind = CompactPart::Kind::Torus;
    else if (ks == "ConnectedFiniteDim") k.kind = CompactPart::Kind::ConnectedFiniteDim;
    else if (ks == "ConnectedInfiniteDim") k.kind = CompactPart::Kind::ConnectedInfiniteDim;
    else if (ks == "ProfiniteFromPParts") k.kind = CompactPart::Kind::ProfiniteFromPParts;
    else if (ks == "Unspecified") k.kind = CompactPart::Kind::Unspecified;
    else throw SchemaError("unknown compact part kind '" + ks + "'");
    if (k.kind == CompactPart::Kind::Torus || k.kind == CompactPart::Kind::ConnectedFiniteDim)
        k.dimension = get_int(j, "s", what);
    if (k.kind == CompactPart::Kind::ProfiniteFromPParts) {
        const json& ps = field(j, "primes", what);
        if (!ps.is_array()) throw SchemaError("primes must be an array");
        for (const auto& p : ps) {
            if (!p.is_number_integer()) throw SchemaError("primes must be integers");
            k.primes.push_back(p.get<std::uint64_t>());
        }
    }
    return k;
}

inline GroupDescriptor descriptor_from_json(const json& j) {
    const std::string what = "descriptor";
    require_object(j, what);
    const json& kind = field(j, "kind", what);
    if (!kind.is_string()) throw SchemaError("descriptor kind must be a string");
    const std::string ks = kind.get<std::string>();
    if (ks == "PadicLCA") return padic_from_json(j, what);
    if (ks == "Heisenberg") {
        allow_only(j, {"kind", "p", "n"}, what);
        return HeisenbergDescriptor{static_cast<std::uint64_t>(get_int(j, "p", what)), get_int(j, "n", what)};
    }
    if (ks == "CompactlyGeneratedLCA") {
        allow_only(j, {"kind", "d", "m", "K"}, what);
        CompactlyGeneratedLCA g;
        g.d = get_int_or(j, "d", 0, what);
        g.m = get_int_or(j, "m", 0, what);
        if (j.contains("K")) g.k = compact_part_from_json(j.at("K"));
        return g;
    }
    if (ks == "ProductOverPrimes") {
        allow_only(j, {"kind", "parts"}, what);
        const json& parts = field(j, "parts", what);
        if (!parts.is_array()) throw SchemaError("parts must be an array");
        ProductOverPrimes g;
        for (const auto& part : parts) g.parts.push_back(padic_from_json(part, "product part"));
        return g;
    }
    throw SchemaError("unknown descriptor kind '" + ks + "'");
}

// ---------------------------------------------------------------------------
// Graded endomorphisms: { n, p, delta, L, Q? }

inline GradedEndo endo_from_json(const json& j) {
    const std::string what = "endo";
    require_object(j, what);
    allow_only(j, {"n", "p", "delta", "L", "Q"}, what);
    long n = get_int(j, "n", what);
    if (n < 1) throw SchemaError("endo n must be positive");
    Prime p = get_prime(j, "p", what);
    Rational delta = get_scalar(field(j, "delta", what), p, what);
    PadicMatrix l = get_matrix(field(j, "L", what), p, "endo L");
    if (l.rows() != static_cast<std::size_t>(2 * n) || l.cols() != static_cast<std::size_t>(2 * n))
        throw SchemaError("endo L must be 2n x 2n");
    GradedEndo e{static_cast<std::size_t>(n), l, PadicScalar::from_rational(delta, p), std::nullopt};
    if (j.contains("Q") && !j.at("Q").is_null()) {
        PadicMatrix q = get_matrix(j.at("Q"), p, "endo Q");
        if (q.rows() != l.rows() || q.cols() != l.cols()) throw SchemaError("endo Q must be 2n x 2n");
        e.q = q.rational();
    }
    return e;
}

inline json to_json(const GradedEndo& e) {
    json j = {{"n", e.n}, {"p", e.prime().value()}, {"delta", e.delta.to_string()}, {"L", to_json(e.l)}};
    if (e.q) j["Q"] = to_json(*e.q);
    return j;
}

} // namespace hood::json_io
