#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hood/entropy_value.hpp"
#include "hood/lattice.hpp"
#include "hood/matrix.hpp"

namespace hood {

/// C_1 = V, C_{k+1} = V ∩ A^{-1}(C_k); so C_k = V ∩ A^{-1}V ∩ ... ∩ A^{-k+1}V.
struct Cotrajectory {
    struct Step {
        PLattice lattice;
        long log_index;  // log_p |V : C_k|
    };

    PadicMatrix map;
    PLattice window;
    std::vector<Step> steps;

    std::vector<long> log_indices() const {
        std::vector<long> out;
        out.reserve(steps.size());
        for (const auto& s : steps) out.push_back(s.log_index);
        return out;
    }
};

inline Cotrajectory build_cotrajectory(const PadicMatrix& a, const PLattice& window, std::size_t horizon) {
    if (!a.is_square()) throw NonSquare("cotrajectory of non-square map");
    Cotrajectory t{a, window, {}};
    t.steps.reserve(horizon);
    if (horizon == 0) return t;
    t.steps.push_back({window, 0});
    for (std::size_t k = 1; k < horizon; ++k) {
        PLattice next = preimage_meet(a, t.steps.back().lattice, window);
        long idx = lattice_index(window, next);
        t.steps.push_back({std::move(next), idx});
    }
    return t;
}

struct OracleParams {
    long sweep = 6;     // M: windows p^{-m} Z_p^n for m = 0..M
    long horizon = 40;  // N: cotrajectory length
    long window = 8;    // w: number of trailing equal increments required

    void validate() const {
        if (sweep < 0 || horizon <= 0 || window <= 0)
            throw InvalidArgument("sweep must be >= 0, horizon and window positive");
        if (horizon < 2 * window) throw InvalidArgument("horizon must be at least twice the window");
    }
};

/// Growth data for one window of the sweep.
struct SweepRow {
    long scale = 0;                 // m
    std::vector<long> log_indices;  // log_p |V_m : C_k|, k = 1..N
    std::vector<long> increments;   // Δ_k = log-index(k+1) - log-index(k)
    std::optional<long> rate;       // Δ* when the trailing window is constant
};

struct OracleReport {
    enum class Status { Ok, NotStabilized };

    Status status = Status::NotStabilized;
    std::optional<EntropyValue> entropy;  // present iff status == Ok
    std::vector<SweepRow> rows;
    std::string diagnostic;

    bool ok() const noexcept { return status == Status::Ok; }
};

inline SweepRow make_sweep_row(long scale, std::vector<long> log_indices, long window) {
    SweepRow row;
    row.scale = scale;
    row.log_indices = std::move(log_indices);
    for (std::size_t k = 1; k < row.log_indices.size(); ++k)
        row.increments.push_back(row.log_indices[k] - row.log_indices[k - 1]);
    if (row.increments.size() >= static_cast<std::size_t>(window)) {
        auto tail = row.increments.end() - window;
        bool constant = std::all_of(tail, row.increments.end(), [&](long d) { return d == *tail; });
        if (constant) row.rate = *tail;
    }
    return row;
}

/// Collapses a sweep into an entropy value: the maximum per-window rate, or
/// NotStabilized if any window failed to settle or the last window still
/// raised the maximum.
inline OracleReport summarize_sweep(Prime p, std::vector<SweepRow> rows) {
    OracleReport rep;
    rep.rows = std::move(rows);
    std::optional<long> best;
    std::optional<long> best_before_last;
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const auto& r = rep.rows[i];
        if (!r.rate) {
            rep.diagnostic = "increments did not stabilize for window scale m=" + std::to_string(r.scale);
            return rep;
        }
        if (i + 1 == rep.rows.size()) best_before_last = best;
        if (!best || *r.rate > *best) best = *r.rate;
    }
    if (!best) {
        rep.diagnostic = "empty sweep";
        return rep;
    }
    if (best_before_last && *best > *best_before_last) {
        rep.diagnostic = "sweep maximum still growing at the last window";
        return rep;
    }
    rep.status = OracleReport::Status::Ok;
    rep.entropy = EntropyValue::log_prime(p, *best);
    return rep;
}

/// Brute-force entropy of x -> A x on Q_p^n from cotrajectory growth over the
/// windows V_m = p^{-m} Z_p^n.
inline OracleReport cotrajectory_entropy(const PadicMatrix& a, const OracleParams& params = {}) {
    params.validate();
    if (!a.is_square()) throw NonSquare("cotrajectory entropy of non-square map");
    std::vector<SweepRow> rows;
    for (long m = 0; m <= params.sweep; ++m) {
        PLattice v = PLattice::standard(a.prime(), a.rows(), -m);
        Cotrajectory t = build_cotrajectory(a, v, static_cast<std::size_t>(params.horizon));
        rows.push_back(make_sweep_row(m, t.log_indices(), params.window));
    }
    return summarize_sweep(a.prime(), std::move(rows));
}

/// True iff A maps Z_p^n into itself, so {p^k Z_p^n} is an invariant local
/// basis and the entropy is zero.
inline bool invariant_basis_certificate(const PadicMatrix& a) {
    if (!a.is_square()) throw NonSquare("certificate for non-square map");
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!is_padic_integer(a.rational()(i, j), a.prime())) return false;
    return true;
}

} // namespace hood
