#include "pgm/moments.hpp"

#include "pgm/group_counting.hpp"
#include "pgm/qseries.hpp"

#include <stdexcept>

namespace pgm {

namespace {

void require_general(const MeasureSpec& spec)
{
    spec.validate();
    if (spec.family != Family::GeneralDU && spec.family != Family::GeneralInfU)
        throw std::invalid_argument("moments are defined here for the general measures only");
}

/// 1 - p^{-d}, or 1 for infinite d
Rational nonzero_fraction(Dimension d, const Rational& p)
{
    return d ? Rational(1) - p.pow(-static_cast<long>(*d)) : Rational(1);
}

template <typename Weight>
IntervalRational weighted_partial_sum(const MeasureSpec& spec, unsigned max_size, Weight weight)
{
    IntervalRational total = IntervalRational::exact(Rational(0));
    for (const Partition& lambda : partitions_up_to(max_size, spec.max_parts()))
        total += pmf(spec, lambda) * weight(lambda);
    return total;
}

}  // namespace

Rational moment_closed_form(const Partition& mu, Dimension d, const Rational& u, const Rational& p)
{
    MeasureSpec::general(p, u, d);
    Rational value = u.pow(mu.size());
    if (!d)
        return value;
    if (mu.length() > *d)
        return Rational(0);
    const Rational inv_p = p.reciprocal();
    return value * pochhammer(inv_p, *d, p) / pochhammer(inv_p, *d - mu.length(), p);
}

Rational weighted_tail_bound(const MeasureSpec& spec, unsigned growth, unsigned max_size)
{
    require_general(spec);
    const Rational& p = spec.p;
    // P(|lambda| = n, r(lambda) = r) <= (u/p)^n p^{-r^2 + r} / c^3 with c <= (1/p)_inf,
    // so the tail is at most (u/p)^{N+1} / (1 - u/p) * S / c^3 with
    // S = sum_{r>=1} p^{-r^2 + (growth + 1) r}.
    const long slope = static_cast<long>(growth) + 1;
    const long last_explicit = spec.family == Family::GeneralDU ? std::min<long>(spec.d, slope + 1) : slope + 1;
    Rational series(0);
    for (long r = 1; r <= last_explicit; ++r)
        series += p.pow(-r * r + slope * r);
    bool truncated_by_dimension = spec.family == Family::GeneralDU && last_explicit == static_cast<long>(spec.d);
    if (!truncated_by_dimension) {
        // for r > slope + 1 successive terms shrink by p^{slope - 2r - 1} <= 1/p
        long r = last_explicit + 1;
        series += p.pow(-r * r + slope * r) / (Rational(1) - p.reciprocal());
    }
    Rational c = inverse_pochhammer_floor(p);
    Rational ratio = spec.u / p;
    return ratio.pow(static_cast<long>(max_size) + 1) / (Rational(1) - ratio) * series / (c * c * c);
}

TruncatedSum moment_truncated(const Partition& mu, const MeasureSpec& spec, unsigned max_size)
{
    require_general(spec);
    IntervalRational partial = weighted_partial_sum(
        spec, max_size, [&](const Partition& lambda) { return sur_count(lambda, mu, spec.p); });
    // |Sur(lambda, mu)| <= |Hom(lambda, mu)| <= p^{|mu| r(lambda)}
    return {partial, weighted_tail_bound(spec, mu.size(), max_size)};
}

Rational torsion_expectation(unsigned ell, Dimension d, const Rational& u, const Rational& p)
{
    if (ell == 0)
        throw std::invalid_argument("torsion level must be at least 1");
    MeasureSpec::general(p, u, d);
    Rational powers(0);
    Rational term = u;
    for (unsigned i = 1; i <= ell; ++i) {
        powers += term;
        term *= u;
    }
    return powers * nonzero_fraction(d, p) + Rational(1);
}

Rational torsion_expectation_exact_order(unsigned ell, Dimension d, const Rational& u, const Rational& p)
{
    if (ell == 0)
        throw std::invalid_argument("torsion level must be at least 1");
    MeasureSpec::general(p, u, d);
    return u.pow(ell) * nonzero_fraction(d, p);
}

TruncatedSum torsion_truncated(unsigned ell, const MeasureSpec& spec, unsigned max_size)
{
    require_general(spec);
    IntervalRational partial = weighted_partial_sum(
        spec, max_size, [&](const Partition& lambda) { return torsion_count(lambda, ell, spec.p); });
    // T_ell(lambda) <= p^{ell r(lambda)}
    return {partial, weighted_tail_bound(spec, ell, max_size)};
}

ZetaSides subgroup_zeta_check(unsigned d, unsigned n, const Rational& p)
{
    if (d == 0)
        throw std::invalid_argument("zeta check needs d >= 1");
    if (p <= Rational(1))
        throw std::invalid_argument("zeta check needs p > 1");
    const Partition rectangle = n == 0 ? Partition() : Partition(std::vector<unsigned>(d, n));
    Rational sum(0);
    for (const Partition& lambda : enumerate_partitions(n, d))
        sum += subgroup_count(rectangle, lambda, p);
    const Rational inv_p = p.reciprocal();
    Rational closed = p.pow(static_cast<long>(n) * (static_cast<long>(d) - 1)) * pochhammer(inv_p, d + n - 1, p) /
                      (pochhammer(inv_p, d - 1, p) * pochhammer(inv_p, n, p));
    return {sum, closed};
}

std::optional<bool> moments_unique_condition(Dimension d, const Rational& u, const Rational& p, unsigned max_bits)
{
    MeasureSpec::general(p, u, d);
    const Rational half(1, 2);
    if (d)
        return pochhammer(u / p, *d, p) > half;
    for (unsigned bits = 8; bits <= max_bits; bits *= 2) {
        IntervalRational product = pochhammer_infinite_bits(u, p, bits);
        if (product.lower > half)
            return true;
        if (product.upper <= half)
            return false;
    }
    return std::nullopt;
}

}  // namespace pgm
