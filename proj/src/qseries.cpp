#include "pgm/qseries.hpp"

#include <stdexcept>

namespace pgm {

namespace {

void require_base(const Rational& p)
{
    if (p <= Rational(1))
        throw std::invalid_argument("q-series base must exceed 1, got " + p.to_string());
}

}  // namespace

Rational pochhammer(const Rational& x, unsigned i, const Rational& p)
{
    require_base(p);
    Rational result(1);
    Rational term = x;
    for (unsigned j = 0; j < i; ++j) {
        result *= Rational(1) - term;
        term /= p;
    }
    return result;
}

IntervalRational pochhammer_infinite(const Rational& x, const Rational& p, unsigned terms)
{
    require_base(p);
    if (x.sign() < 0 || x >= p)
        throw std::invalid_argument("pochhammer_infinite needs 0 <= x < p");
    Rational partial(1);
    Rational term = x / p;
    for (unsigned i = 1; i <= terms; ++i) {
        partial *= Rational(1) - term;
        term /= p;
    }
    // sum_{i>terms} x/p^i = x / (p^terms (p - 1)); `term` is now x/p^{terms+1}.
    Rational tail = term * p / (p - Rational(1));
    Rational factor = Rational(1) - tail;
    Rational lower = factor.sign() > 0 ? partial * factor : Rational(0);
    return {lower, partial};
}

unsigned pochhammer_terms_for_bits(const Rational& x, const Rational& p, unsigned bits)
{
    require_base(p);
    // width <= partial * tail <= x / (p^M (p-1)); stop once that is < 2^-bits.
    Rational target = Rational(1) / Rational(2).pow(bits);
    Rational tail = x / (p - Rational(1));
    unsigned m = 0;
    while (tail >= target) {
        tail /= p;
        ++m;
    }
    return m;
}

IntervalRational pochhammer_infinite_bits(const Rational& x, const Rational& p, unsigned bits)
{
    return pochhammer_infinite(x, p, pochhammer_terms_for_bits(x, p, bits));
}

Rational q_integer(unsigned n, const Rational& q)
{
    Rational sum(0);
    Rational power(1);
    for (unsigned i = 0; i < n; ++i) {
        sum += power;
        power *= q;
    }
    return sum;
}

Rational q_factorial(unsigned n, const Rational& q)
{
    Rational result(1);
    for (unsigned i = 2; i <= n; ++i)
        result *= q_integer(i, q);
    return result;
}

Rational q_binomial(unsigned n, unsigned j, const Rational& q)
{
    if (j > n)
        throw std::invalid_argument("q_binomial needs j <= n");
    require_base(q);
    if (j > n - j)
        j = n - j;
    Rational result(1);
    for (unsigned i = 0; i < j; ++i)
        result *= (q.pow(n - i) - Rational(1)) / (q.pow(i + 1) - Rational(1));
    return result;
}

}  // namespace pgm
