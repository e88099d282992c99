#pragma once

#include <mpfr.h>

#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "hood/padic.hpp"

namespace hood {

/// Exact formal entropy  sum_p q_p * log p  with nonnegative rational
/// coefficients, or +infinity.
class EntropyValue {
public:
    EntropyValue() = default;

    static EntropyValue zero() { return {}; }

    static EntropyValue log_prime(Prime p, const Rational& coeff = 1) {
        EntropyValue e;
        e.add_term(p, coeff);
        return e;
    }

    static EntropyValue infinity() {
        EntropyValue e;
        e.infinite_ = true;
        return e;
    }

    bool is_infinite() const noexcept { return infinite_; }
    bool is_zero() const noexcept { return !infinite_ && terms_.empty(); }
    bool is_positive() const noexcept { return infinite_ || !terms_.empty(); }

    /// Nonzero coefficients keyed by prime value.
    const std::map<std::uint64_t, Rational>& terms() const noexcept { return terms_; }

    Rational coefficient(Prime p) const {
        auto it = terms_.find(p.value());
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(Prime p, const Rational& coeff) {
        if (coeff < 0) throw InvalidArgument("entropy coefficients must be nonnegative");
        Rational c = coeff;
        c.canonicalize();
        if (c == 0) return;
        terms_[p.value()] += c;
    }

    EntropyValue& operator+=(const EntropyValue& o) {
        infinite_ = infinite_ || o.infinite_;
        for (const auto& [p, q] : o.terms_) terms_[p] += q;
        return *this;
    }

    friend EntropyValue operator+(EntropyValue a, const EntropyValue& b) { return a += b; }

    /// Infinite values compare equal regardless of their finite part.
    friend bool operator==(const EntropyValue& a, const EntropyValue& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.terms_ == b.terms_;
    }

    /// Display-only decimal with `digits` significant digits.
    std::string decimal(int digits = 20) const {
        if (infinite_) return "inf";
        if (terms_.empty()) return "0";
        mpfr_prec_t prec = 256;
        mpfr_t acc, lg, q;
        mpfr_inits2(prec, acc, lg, q, static_cast<mpfr_ptr>(nullptr));
        mpfr_set_ui(acc, 0, MPFR_RNDN);
        for (const auto& [p, c] : terms_) {
            mpfr_set_ui(lg, static_cast<unsigned long>(p), MPFR_RNDN);
            mpfr_log(lg, lg, MPFR_RNDN);
            mpfr_set_q(q, c.get_mpq_t(), MPFR_RNDN);
            mpfr_mul(lg, lg, q, MPFR_RNDN);
            mpfr_add(acc, acc, lg, MPFR_RNDN);
        }
        char* buf = nullptr;
        std::string fmt = "%." + std::to_string(digits) + "Rg";
        mpfr_asprintf(&buf, fmt.c_str(), acc);
        std::string out(buf);
        mpfr_free_str(buf);
        mpfr_clears(acc, lg, q, static_cast<mpfr_ptr>(nullptr));
        return out;
    }

    /// e.g. "log 2 + 3/2 log 5", "0", "inf".
    std::string to_string() const {
        if (infinite_) return "inf";
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [p, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            if (c != 1) os << c.get_str() << " ";
            os << "log " << p;
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const EntropyValue& e) { return os << e.to_string(); }

private:
    std::map<std::uint64_t, Rational> terms_;
    bool infinite_ = false;
};

} // namespace hood
