#pragma once

// Surjection moments and torsion expectations of the general measures
// P_{d,u}, d finite or infinite, with rigorous truncation enclosures.

#include "pgm/measures.hpp"

#include <optional>

namespace pgm {

/// E|Sur(lambda, mu)| = u^{|mu|} (1/p)_d / (1/p)_{d - r(mu)}, 0 when r(mu) > d;
/// u^{|mu|} when d is infinite.
Rational moment_closed_form(const Partition& mu, Dimension d, const Rational& u, const Rational& p);

/// A truncated sum over |lambda| <= max_size together with an upper bound on
/// the omitted terms: the full sum lies in [partial.lower, partial.upper + tail].
struct TruncatedSum {
    IntervalRational partial;
    Rational tail;

    IntervalRational enclosure() const { return {partial.lower, partial.upper + tail}; }
    bool encloses(const Rational& x) const { return enclosure().contains(x); }
};

TruncatedSum moment_truncated(const Partition& mu, const MeasureSpec& spec, unsigned max_size);

/// E[T_ell] = (u + ... + u^ell)(1 - p^{-d}) + 1, with p^{-inf} = 0.
Rational torsion_expectation(unsigned ell, Dimension d, const Rational& u, const Rational& p);
/// E[T_ell - T_{ell-1}] = u^ell (1 - p^{-d})
Rational torsion_expectation_exact_order(unsigned ell, Dimension d, const Rational& u, const Rational& p);
TruncatedSum torsion_truncated(unsigned ell, const MeasureSpec& spec, unsigned max_size);

/// Upper bound on sum_{|lambda| > max_size} P(lambda) p^{growth * r(lambda)}
/// for a general measure, from the joint size-and-parts law.
Rational weighted_tail_bound(const MeasureSpec& spec, unsigned growth, unsigned max_size);

struct ZetaSides {
    Rational subgroup_sum;   ///< sum over |lambda| = n, r <= d of n_{(n^d)}(lambda)
    Rational closed_form;    ///< p^{n(d-1)} (1/p)_{d+n-1} / ((1/p)_{d-1} (1/p)_n)
};
ZetaSides subgroup_zeta_check(unsigned d, unsigned n, const Rational& p);

/// Whether 1/(u/p)_d < 2. For infinite d the enclosure is refined until it
/// separates from 1/2; nullopt if `max_bits` of refinement do not decide.
std::optional<bool> moments_unique_condition(Dimension d, const Rational& u, const Rational& p,
                                             unsigned max_bits = 4096);

}  // namespace pgm
