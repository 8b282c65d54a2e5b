#pragma once

// Exact rational scalars and rational intervals.
//
// Every probability, count and q-series value in the library is a Rational.
// Values are always kept in lowest terms with a positive denominator (GMP's
// mpq canonical form), so equality is structural.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <string>
#include <string_view>

namespace pgm {

class Rational {
public:
    Rational() = default;

    template <std::integral T>
    Rational(T value)  // NOLINT(google-explicit-constructor)
    {
        if constexpr (std::is_signed_v<T>)
            value_ = static_cast<long>(value);
        else
            value_ = static_cast<unsigned long>(value);
    }

    Rational(const mpz_class& numerator, const mpz_class& denominator);
    explicit Rational(mpz_class integer) : value_(std::move(integer)) {}
    explicit Rational(mpq_class value);

    /// Parses "a/b" or "a" (optional sign, base 10). Throws std::invalid_argument.
    static Rational parse(std::string_view text);

    std::string to_string() const;
    /// Decimal rendering with `digits` significant digits; reporting only.
    std::string to_decimal(int digits = 12) const;
    double to_double() const { return value_.get_d(); }

    const mpq_class& raw() const { return value_; }
    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    Rational pow(long exponent) const;
    Rational reciprocal() const;
    Rational abs() const { return Rational(::abs(value_)); }

    Rational operator-() const { return Rational(mpq_class(-value_)); }
    Rational& operator+=(const Rational& rhs) { value_ += rhs.value_; return *this; }
    Rational& operator-=(const Rational& rhs) { value_ -= rhs.value_; return *this; }
    Rational& operator*=(const Rational& rhs) { value_ *= rhs.value_; return *this; }
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        return cmp(a.value_, b.value_) <=> 0;
    }

private:
    mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Closed interval [lower, upper] of rationals. Used only where a quantity is an
/// infinite product or sum; finite quantities are plain Rationals.
struct IntervalRational {
    Rational lower;
    Rational upper;

    IntervalRational() = default;
    IntervalRational(Rational lo, Rational hi);
    static IntervalRational exact(const Rational& value) { return {value, value}; }

    bool is_exact() const { return lower == upper; }
    bool contains(const Rational& x) const { return lower <= x && x <= upper; }
    Rational width() const { return upper - lower; }
    Rational midpoint() const { return (lower + upper) / 2; }

    // The arithmetic below assumes non-negative endpoints, which holds for every
    // probability and q-series value the library encloses.
    IntervalRational& operator+=(const IntervalRational& rhs);
    IntervalRational& operator*=(const IntervalRational& rhs);
    IntervalRational& operator*=(const Rational& scale);
    IntervalRational& operator/=(const IntervalRational& rhs);

    friend IntervalRational operator+(IntervalRational a, const IntervalRational& b) { return a += b; }
    friend IntervalRational operator*(IntervalRational a, const IntervalRational& b) { return a *= b; }
    friend IntervalRational operator*(IntervalRational a, const Rational& b) { return a *= b; }
    friend IntervalRational operator*(const Rational& b, IntervalRational a) { return a *= b; }
    friend IntervalRational operator/(IntervalRational a, const IntervalRational& b) { return a /= b; }

    friend bool operator==(const IntervalRational&, const IntervalRational&) = default;
};

std::string to_string(const IntervalRational& x);

/// Widens x to the enclosing interval with endpoints in 2^-bits Z; an exact
/// dyadic value is kept. Used to keep reported enclosures short.
IntervalRational round_outward(const IntervalRational& x, unsigned bits);

}  // namespace pgm
