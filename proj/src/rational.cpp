#include "pgm/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace pgm {

Rational::Rational(const mpz_class& numerator, const mpz_class& denominator)
{
    if (denominator == 0)
        throw std::domain_error("rational with zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value))
{
    value_.canonicalize();
}

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

}  // namespace

Rational Rational::parse(std::string_view text)
{
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    if (negative)
        n = -n;
    return Rational(n, d);
}

std::string Rational::to_string() const
{
    if (is_integer())
        return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::to_decimal(int digits) const
{
    mpf_class f(value_, 512);
    std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
    int n = gmp_snprintf(buf.data(), buf.size(), "%.*Fg", digits, f.get_mpf_t());
    return std::string(buf.data(), static_cast<std::size_t>(n));
}

Rational Rational::pow(long exponent) const
{
    if (exponent < 0)
        return reciprocal().pow(-exponent);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(d.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    // Powers of a reduced fraction stay reduced.
    mpq_class q;
    q.get_num() = n;
    q.get_den() = d;
    Rational r;
    r.value_ = std::move(q);
    return r;
}

Rational Rational::reciprocal() const
{
    if (is_zero())
        throw std::domain_error("reciprocal of zero");
    return Rational(value_.get_den(), value_.get_num());
}

Rational& Rational::operator/=(const Rational& rhs)
{
    if (rhs.is_zero())
        throw std::domain_error("division by zero");
    value_ /= rhs.value_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r)
{
    return os << r.to_string();
}

IntervalRational::IntervalRational(Rational lo, Rational hi) : lower(std::move(lo)), upper(std::move(hi))
{
    if (upper < lower)
        throw std::invalid_argument("interval with lower > upper");
}

IntervalRational& IntervalRational::operator+=(const IntervalRational& rhs)
{
    lower += rhs.lower;
    upper += rhs.upper;
    return *this;
}

IntervalRational& IntervalRational::operator*=(const IntervalRational& rhs)
{
    lower *= rhs.lower;
    upper *= rhs.upper;
    return *this;
}

IntervalRational& IntervalRational::operator*=(const Rational& scale)
{
    lower *= scale;
    upper *= scale;
    if (scale.sign() < 0)
        std::swap(lower, upper);
    return *this;
}

IntervalRational& IntervalRational::operator/=(const IntervalRational& rhs)
{
    if (rhs.lower.sign() <= 0)
        throw std::domain_error("interval division by a non-positive interval");
    lower /= rhs.upper;
    upper /= rhs.lower;
    return *this;
}

std::string to_string(const IntervalRational& x)
{
    if (x.is_exact())
        return x.lower.to_string();
    return "[" + x.lower.to_string() + ", " + x.upper.to_string() + "]";
}

IntervalRational round_outward(const IntervalRational& x, unsigned bits)
{
    if (x.is_exact() && mpz_scan1(x.lower.denominator().get_mpz_t(), 0) == mpz_sizeinbase(x.lower.denominator().get_mpz_t(), 2) - 1)
        return x;
    mpz_class lo, hi;
    mpz_class scaled_lo = x.lower.numerator() << bits;
    mpz_class scaled_hi = x.upper.numerator() << bits;
    mpz_fdiv_q(lo.get_mpz_t(), scaled_lo.get_mpz_t(), x.lower.denominator().get_mpz_t());
    mpz_cdiv_q(hi.get_mpz_t(), scaled_hi.get_mpz_t(), x.upper.denominator().get_mpz_t());
    mpz_class scale = mpz_class(1) << bits;
    return {Rational(lo, scale), Rational(hi, scale)};
}

}  // namespace pgm
