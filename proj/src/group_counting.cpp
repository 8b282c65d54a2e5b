#include "pgm/group_counting.hpp"

#include "pgm/qseries.hpp"

#include <algorithm>
#include <stdexcept>

namespace pgm {

namespace {

void require_base(const Rational& p)
{
    if (p <= Rational(1))
        throw std::invalid_argument("p must exceed 1, got " + p.to_string());
}

}  // namespace

Rational aut_order(const Partition& lambda, const Rational& p)
{
    require_base(p);
    Rational result = p.pow(static_cast<long>(lambda.conjugate_square_sum()));
    Rational inv_p = p.reciprocal();
    for (unsigned i = 1; i <= lambda.largest(); ++i)
        result *= pochhammer(inv_p, lambda.multiplicity(i), p);
    return result;
}

Rational sp_order(const Partition& lambda, const Rational& p)
{
    require_base(p);
    Rational result = p.pow(static_cast<long>(4 * lambda.n_lambda() + 3 * lambda.size()));
    Rational inv_p2 = (p * p).reciprocal();
    for (unsigned i = 1; i <= lambda.largest(); ++i) {
        Rational power = inv_p2;
        for (unsigned j = 1; j <= lambda.multiplicity(i); ++j) {
            result *= Rational(1) - power;
            power *= inv_p2;
        }
    }
    return result;
}

Rational subgroup_count(const Partition& lambda, const Partition& mu, const Rational& p)
{
    require_base(p);
    if (!lambda.contains(mu))
        return Rational(0);
    // n_lambda(mu) = prod_{i>=1} p^{mu'_{i+1}(lambda'_i - mu'_i)} [lambda'_i - mu'_{i+1} choose mu'_i - mu'_{i+1}]_p
    Rational result(1);
    for (unsigned i = 1; i <= mu.largest(); ++i) {
        unsigned big = lambda.column(i);
        unsigned small = mu.column(i);
        unsigned next = mu.column(i + 1);
        result *= p.pow(static_cast<long>(next) * static_cast<long>(big - small));
        result *= q_binomial(big - next, small - next, p);
    }
    return result;
}

Rational sur_count(const Partition& lambda, const Partition& mu, const Rational& p)
{
    return subgroup_count(lambda, mu, p) * aut_order(mu, p);
}

Rational hom_count(const Partition& lambda, const Partition& mu, const Rational& p)
{
    require_base(p);
    long exponent = 0;
    for (unsigned a : lambda.parts())
        for (unsigned b : mu.parts())
            exponent += std::min(a, b);
    return p.pow(exponent);
}

Rational torsion_count(const Partition& lambda, unsigned ell, const Rational& p)
{
    require_base(p);
    if (ell == 0)
        throw std::invalid_argument("torsion level must be at least 1");
    long exponent = 0;
    for (unsigned i = 1; i <= ell; ++i)
        exponent += lambda.column(i);
    return p.pow(exponent);
}

}  // namespace pgm
