#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "hood/errors.hpp"

namespace hood {

using Integer = mpz_class;
using Rational = mpq_class;

/// A rational prime. Primality is checked by trial division, which is plenty
/// for the desk-scale primes this library works with.
class Prime {
public:
    explicit Prime(std::uint64_t p) : p_(p) {
        if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
    }

    std::uint64_t value() const noexcept { return p_; }
    unsigned long ulong() const noexcept { return static_cast<unsigned long>(p_); }

    static bool is_prime(std::uint64_t n) noexcept {
        if (n < 2) return false;
        if (n < 4) return true;
        if (n % 2 == 0) return false;
        for (std::uint64_t d = 3; d <= n / d; d += 2)
            if (n % d == 0) return false;
        return true;
    }

    friend bool operator==(Prime a, Prime b) noexcept { return a.p_ == b.p_; }
    friend auto operator<=>(Prime a, Prime b) noexcept { return a.p_ <=> b.p_; }
    friend std::ostream& operator<<(std::ostream& os, Prime p) { return os << p.p_; }

private:
    std::uint64_t p_;
};

// ---------------------------------------------------------------------------
// Valuation helpers on plain rationals.

/// v_p of a nonzero integer.
inline long valuation(const Integer& z, Prime p) {
    if (z == 0) throw DivisionByZero("valuation of zero integer");
    Integer rest;
    Integer pz(p.ulong());
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), pz.get_mpz_t()));
}

/// v_p of a rational; empty for zero.
inline std::optional<long> valuation(const Rational& q, Prime p) {
    if (q == 0) return std::nullopt;
    return valuation(Integer(q.get_num()), p) - valuation(Integer(q.get_den()), p);
}

/// Valuation with zero mapped to a caller-supplied ceiling. Handy inside
/// min-valuation searches.
inline long valuation_or(const Rational& q, Prime p, long if_zero) {
    auto v = valuation(q, p);
    return v ? *v : if_zero;
}

inline Rational prime_power(Prime p, long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), p.ulong(), static_cast<unsigned long>(e < 0 ? -e : e));
    if (e >= 0) return Rational(r);
    Rational q(Integer(1), r);
    q.canonicalize();
    return q;
}

inline bool is_padic_integer(const Rational& q, Prime p) {
    auto v = valuation(q, p);
    return !v || *v >= 0;
}

/// Canonical representative of y modulo Z_p: the unique element of Z[1/p]
/// in [0, 1) congruent to y.
inline Rational padic_fractional_part(const Rational& y, Prime p) {
    if (y == 0) return 0;
    Integer den = y.get_den();
    Integer pz(p.ulong());
    Integer coprime;
    auto s = mpz_remove(coprime.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
    if (s == 0) return 0;
    Integer modulus;
    mpz_pow_ui(modulus.get_mpz_t(), pz.get_mpz_t(), s);
    Integer inv;
    mpz_invert(inv.get_mpz_t(), coprime.get_mpz_t(), modulus.get_mpz_t());
    Integer t = (Integer(y.get_num()) * inv) % modulus;
    if (t < 0) t += modulus;
    Rational r(t, modulus);
    r.canonicalize();
    return r;
}

/// Canonical representative of x modulo p^e Z_p (e may be negative).
inline Rational reduce_mod_prime_power(const Rational& x, Prime p, long e) {
    Rational scale = prime_power(p, e);
    Rational y = x / scale;
    return scale * padic_fractional_part(y, p);
}

// ---------------------------------------------------------------------------

/// Exact element of Q_p with rational value: unit * p^valuation, where the
/// unit's numerator and denominator are prime to p. Zero carries no valuation.
class PadicScalar {
public:
    static PadicScalar from_rational(const Rational& q, Prime p) {
        PadicScalar s(p);
        if (q == 0) return s;
        Integer num = q.get_num(), den = q.get_den();
        Integer pz(p.ulong());
        Integer num_rest, den_rest;
        long vn = static_cast<long>(mpz_remove(num_rest.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t()));
        long vd = static_cast<long>(mpz_remove(den_rest.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()));
        s.valuation_ = vn - vd;
        s.unit_ = Rational(num_rest, den_rest);
        s.unit_.canonicalize();
        return s;
    }

    static PadicScalar zero(Prime p) { return PadicScalar(p); }
    static PadicScalar one(Prime p) { return from_rational(1, p); }

    Prime prime() const noexcept { return prime_; }
    bool is_zero() const noexcept { return !valuation_.has_value(); }
    /// Empty means the valuation is infinite (the scalar is zero).
    std::optional<long> valuation() const noexcept { return valuation_; }
    const Rational& unit() const noexcept { return unit_; }

    Rational to_rational() const {
        if (is_zero()) return 0;
        return unit_ * prime_power(prime_, *valuation_);
    }

    /// |x|_p = p^(-v(x)); zero for zero.
    Rational norm() const {
        if (is_zero()) return 0;
        return prime_power(prime_, -*valuation_);
    }

    PadicScalar inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of zero p-adic scalar");
        PadicScalar r(prime_);
        r.valuation_ = -*valuation_;
        r.unit_ = 1 / unit_;
        return r;
    }

    PadicScalar operator-() const {
        PadicScalar r = *this;
        r.unit_ = -r.unit_;
        if (r.is_zero()) r.unit_ = 1;
        return r;
    }

    friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) {
        check_same(a, b);
        return from_rational(a.to_rational() + b.to_rational(), a.prime_);
    }
    friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) {
        check_same(a, b);
        return from_rational(a.to_rational() - b.to_rational(), a.prime_);
    }
    friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
        check_same(a, b);
        if (a.is_zero() || b.is_zero()) return zero(a.prime_);
        PadicScalar r(a.prime_);
        r.valuation_ = *a.valuation_ + *b.valuation_;
        r.unit_ = a.unit_ * b.unit_;
        return r;
    }
    friend PadicScalar operator/(const PadicScalar& a, const PadicScalar& b) {
        check_same(a, b);
        if (b.is_zero()) throw DivisionByZero("p-adic division by zero");
        return a * b.inverse();
    }

    friend bool operator==(const PadicScalar& a, const PadicScalar& b) {
        return a.prime_ == b.prime_ && a.valuation_ == b.valuation_ && a.unit_ == b.unit_;
    }

    /// Plain rational rendering, "a/b" or "a".
    std::string to_string() const { return to_rational().get_str(); }

    /// Rendering in the "p^k*a/b" form; zero renders as "0".
    std::string to_padic_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        os << "p^" << *valuation_ << "*" << unit_.get_str();
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const PadicScalar& s) {
        return os << s.to_string();
    }

private:
    explicit PadicScalar(Prime p) : prime_(p), unit_(1) {}

    static void check_same(const PadicScalar& a, const PadicScalar& b) {
        if (!(a.prime_ == b.prime_)) {
            std::ostringstream os;
            os << "scalars over p=" << a.prime_ << " and p=" << b.prime_;
            throw PrimeMismatch(os.str());
        }
    }

    Prime prime_;
    std::optional<long> valuation_;
    Rational unit_;
};

// ---------------------------------------------------------------------------
// Scalar string grammar:  "a/b"  |  "a"  |  "p^k*a/b"  |  "p^k"
// where the base may be the letter p (the context prime) or an integer.
// Whitespace is ignored anywhere.

namespace detail {

inline std::string strip_spaces(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

inline bool is_signed_int(std::string_view s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

inline Integer parse_int(std::string_view s) {
    if (!is_signed_int(s)) throw ParseError("bad integer '" + std::string(s) + "'");
    std::string t(s);
    if (t[0] == '+') t.erase(0, 1);
    return Integer(t, 10);
}

inline Rational parse_plain_rational(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(s));
    Integer num = parse_int(s.substr(0, slash));
    std::string_view den_s = s.substr(slash + 1);
    if (!den_s.empty() && (den_s[0] == '-' || den_s[0] == '+'))
        throw ParseError("sign not allowed in denominator");
    Integer den = parse_int(den_s);
    if (den == 0) throw DivisionByZero("zero denominator in '" + std::string(s) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

} // namespace detail

inline Rational parse_rational(std::string_view text, Prime p) {
    std::string s = detail::strip_spaces(text);
    if (s.empty()) throw ParseError("empty scalar");
    bool negate = false;
    std::string_view v(s);
    auto caret = v.find('^');
    if (caret == std::string_view::npos) return detail::parse_plain_rational(v);

    if (v[0] == '-') {
        negate = true;
        v.remove_prefix(1);
        --caret;
    }
    std::string_view base_s = v.substr(0, caret);
    std::string_view rest = v.substr(caret + 1);
    auto star = rest.find('*');
    std::string_view exp_s = rest.substr(0, star);
    Rational base;
    if (base_s == "p")
        base = Rational(Integer(p.ulong()));
    else
        base = Rational(detail::parse_int(base_s));
    if (base == 0) throw ParseError("zero base in power");
    Integer e = detail::parse_int(exp_s);
    if (!e.fits_slong_p()) throw ParseError("exponent out of range");
    long ex = e.get_si();
    Integer bn = base.get_num();
    Integer pw;
    mpz_pow_ui(pw.get_mpz_t(), bn.get_mpz_t(), static_cast<unsigned long>(ex < 0 ? -ex : ex));
    Rational value = ex >= 0 ? Rational(pw) : Rational(Integer(1), pw);
    value.canonicalize();
    if (star != std::string_view::npos) value *= detail::parse_plain_rational(rest.substr(star + 1));
    return negate ? Rational(-value) : value;
}

inline PadicScalar parse_scalar(std::string_view text, Prime p) {
    return PadicScalar::from_rational(parse_rational(text, p), p);
}

} // namespace hood
