#pragma once

// Arbitrary-precision integers and rationals (GMP-backed) with canonical
// normalization, plus the naive height on Q.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cuboid {

class BigInt {
public:
    BigInt() = default;
    BigInt(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
    BigInt(int v) : v_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
    explicit BigInt(mpz_class v) : v_(std::move(v)) {}

    /// Parses an optionally signed decimal integer. Throws std::invalid_argument.
    static BigInt parse(std::string_view text) {
        std::string s(text);
        if (s.empty()) throw std::invalid_argument("empty integer literal");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw std::invalid_argument("malformed integer literal: " + s);
        for (std::size_t k = i; k < s.size(); ++k) {
            if (s[k] < '0' || s[k] > '9') throw std::invalid_argument("malformed integer literal: " + s);
        }
        if (s[0] == '+') s.erase(0, 1);
        return BigInt(mpz_class(s, 10));
    }

    [[nodiscard]] std::string to_string() const { return v_.get_str(10); }
    [[nodiscard]] int sign() const { return sgn(v_); }
    [[nodiscard]] bool is_zero() const { return sign() == 0; }
    [[nodiscard]] bool is_one() const { return v_ == 1; }
    [[nodiscard]] BigInt abs() const { return BigInt(mpz_class(::abs(v_))); }
    [[nodiscard]] bool fits_long() const { return v_.fits_slong_p(); }
    [[nodiscard]] long to_long() const {
        if (!fits_long()) throw std::overflow_error("integer does not fit in long");
        return v_.get_si();
    }
    /// Nonnegative residue modulo a small positive modulus.
    [[nodiscard]] unsigned long mod_ui(unsigned long m) const { return mpz_fdiv_ui(v_.get_mpz_t(), m); }

    [[nodiscard]] const mpz_class& mpz() const { return v_; }

    BigInt operator-() const { return BigInt(mpz_class(-v_)); }
    friend BigInt operator+(const BigInt& a, const BigInt& b) { return BigInt(mpz_class(a.v_ + b.v_)); }
    friend BigInt operator-(const BigInt& a, const BigInt& b) { return BigInt(mpz_class(a.v_ - b.v_)); }
    friend BigInt operator*(const BigInt& a, const BigInt& b) { return BigInt(mpz_class(a.v_ * b.v_)); }
    /// Truncating division (C semantics). Throws on zero divisor.
    friend BigInt operator/(const BigInt& a, const BigInt& b) {
        if (b.is_zero()) throw std::domain_error("division by zero");
        return BigInt(mpz_class(a.v_ / b.v_));
    }
    /// Remainder with the sign of the dividend. Throws on zero divisor.
    friend BigInt operator%(const BigInt& a, const BigInt& b) {
        if (b.is_zero()) throw std::domain_error("division by zero");
        return BigInt(mpz_class(a.v_ % b.v_));
    }
    BigInt& operator+=(const BigInt& o) { v_ += o.v_; return *this; }
    BigInt& operator-=(const BigInt& o) { v_ -= o.v_; return *this; }
    BigInt& operator*=(const BigInt& o) { v_ *= o.v_; return *this; }

    friend bool operator==(const BigInt& a, const BigInt& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    [[nodiscard]] BigInt pow(unsigned long e) const {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), v_.get_mpz_t(), e);
        return BigInt(std::move(r));
    }
    /// Exact quotient; the caller guarantees divisibility.
    [[nodiscard]] BigInt divexact(const BigInt& d) const {
        mpz_class r;
        mpz_divexact(r.get_mpz_t(), v_.get_mpz_t(), d.v_.get_mpz_t());
        return BigInt(std::move(r));
    }
    [[nodiscard]] bool divisible_by(const BigInt& d) const {
        return mpz_divisible_p(v_.get_mpz_t(), d.v_.get_mpz_t()) != 0;
    }
    /// Floor of the square root of a nonnegative value.
    [[nodiscard]] BigInt isqrt() const {
        if (sign() < 0) throw std::domain_error("square root of negative integer");
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), v_.get_mpz_t());
        return BigInt(std::move(r));
    }
    [[nodiscard]] bool is_perfect_square() const {
        return sign() >= 0 && mpz_perfect_square_p(v_.get_mpz_t()) != 0;
    }

    friend std::ostream& operator<<(std::ostream& os, const BigInt& x) { return os << x.to_string(); }

private:
    mpz_class v_;
};

/// Nonnegative gcd; gcd(0, 0) = 0.
inline BigInt int_gcd(const BigInt& a, const BigInt& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
    return BigInt(std::move(g));
}

inline BigInt int_lcm(const BigInt& a, const BigInt& b) {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
    return BigInt(std::move(l));
}

/// Positive divisors of |n| in ascending order, by trial division up to sqrt|n|.
inline std::vector<BigInt> int_divisors(const BigInt& n) {
    if (n.is_zero()) throw std::domain_error("divisors of zero undefined");
    std::vector<BigInt> small;
    std::vector<BigInt> large;
    const BigInt m = n.abs();
    const BigInt root = m.isqrt();
    for (BigInt d = 1; d <= root; d += 1) {
        if (m.divisible_by(d)) {
            small.push_back(d);
            BigInt e = m.divexact(d);
            if (e != d) large.push_back(std::move(e));
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

/// Prime factorization of |n| by trial division, as (prime, exponent) pairs.
inline std::vector<std::pair<BigInt, unsigned>> int_factor_small(const BigInt& n) {
    if (n.is_zero()) throw std::domain_error("factorization of zero undefined");
    std::vector<std::pair<BigInt, unsigned>> out;
    BigInt m = n.abs();
    for (BigInt p = 2; p * p <= m; p += 1) {
        unsigned e = 0;
        while (m.divisible_by(p)) {
            m = m.divexact(p);
            ++e;
        }
        if (e > 0) out.emplace_back(p, e);
    }
    if (m > BigInt(1)) out.emplace_back(m, 1);
    return out;
}

/// Exact fraction kept in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(int v) : v_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
    Rational(const BigInt& v) : v_(v.mpz()) {}  // NOLINT(google-explicit-constructor)
    Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}
    Rational(const BigInt& num, const BigInt& den) {
        if (den.is_zero()) throw std::domain_error("division by zero");
        v_ = mpq_class(num.mpz(), den.mpz());
        v_.canonicalize();
    }
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    /// Accepts "n" or "p/q" (optionally signed).
    static Rational parse(std::string_view text) {
        auto slash = text.find('/');
        if (slash == std::string_view::npos) return Rational(BigInt::parse(text));
        return Rational(BigInt::parse(text.substr(0, slash)), BigInt::parse(text.substr(slash + 1)));
    }

    [[nodiscard]] BigInt num() const { return BigInt(mpz_class(v_.get_num())); }
    [[nodiscard]] BigInt den() const { return BigInt(mpz_class(v_.get_den())); }
    [[nodiscard]] int sign() const { return sgn(v_); }
    [[nodiscard]] bool is_zero() const { return sign() == 0; }
    [[nodiscard]] bool is_one() const { return v_ == 1; }
    [[nodiscard]] bool is_integer() const { return v_.get_den() == 1; }
    [[nodiscard]] Rational abs() const { return Rational(mpq_class(::abs(v_))); }
    [[nodiscard]] Rational inverse() const {
        if (is_zero()) throw std::domain_error("division by zero");
        return Rational(mpq_class(1 / v_));
    }
    [[nodiscard]] Rational pow(unsigned long e) const {
        return Rational(num().pow(e), den().pow(e));
    }
    [[nodiscard]] const mpq_class& mpq() const { return v_; }

    /// "p/q", or "p" when the denominator is 1.
    [[nodiscard]] std::string to_string() const { return v_.get_str(10); }
    /// Always "p/q" (the JSON encoding).
    [[nodiscard]] std::string to_fraction_string() const {
        return num().to_string() + "/" + den().to_string();
    }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("division by zero");
        return Rational(mpq_class(a.v_ / b.v_));
    }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }

private:
    mpq_class v_;
};

inline Rational rat_normalize(const BigInt& num, const BigInt& den) { return Rational(num, den); }

/// Naive height max(|p|, q) of p/q in lowest terms.
class Height {
public:
    explicit Height(BigInt v) : value_(std::move(v)) {
        if (value_.sign() < 0) throw std::invalid_argument("height must be nonnegative");
    }
    [[nodiscard]] const BigInt& value() const { return value_; }
    friend bool operator==(const Height&, const Height&) = default;
    friend auto operator<=>(const Height& a, const Height& b) { return a.value_ <=> b.value_; }

private:
    BigInt value_;
};

inline Height rat_height(const Rational& x) {
    BigInt p = x.num().abs();
    BigInt q = x.den();
    return Height(p > q ? p : q);
}

/// Ordering by (numerator, denominator), used for deterministic listings.
inline bool num_den_less(const Rational& a, const Rational& b) {
    if (a.num() != b.num()) return a.num() < b.num();
    return a.den() < b.den();
}

}  // namespace cuboid

template <>
struct std::hash<cuboid::BigInt> {
    std::size_t operator()(const cuboid::BigInt& x) const { return std::hash<std::string>{}(x.to_string()); }
};
