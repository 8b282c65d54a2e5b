#pragma once

// q-series primitives in the descending convention
//
//     (x)_i = (1 - x)(1 - x/p)...(1 - x/p^{i-1}),
//
// so that (1/p)_i = (1 - 1/p)...(1 - 1/p^i) and (u/p)_d = prod_{i=1}^d (1 - u/p^i).

#include "pgm/rational.hpp"

namespace pgm {

/// (x)_i with base p. Throws std::invalid_argument unless p > 1.
Rational pochhammer(const Rational& x, unsigned i, const Rational& p);

/// Encloses prod_{i>=1} (1 - x/p^i) using `terms` explicit factors and the
/// bound prod_{i>M} (1 - a_i) >= 1 - sum_{i>M} a_i for the remainder.
/// Requires p > 1 and 0 <= x < p.
IntervalRational pochhammer_infinite(const Rational& x, const Rational& p, unsigned terms);

/// Same enclosure with the number of factors chosen so the width is below 2^-bits.
IntervalRational pochhammer_infinite_bits(const Rational& x, const Rational& p, unsigned bits);

/// Number of explicit factors pochhammer_infinite needs for width < 2^-bits.
unsigned pochhammer_terms_for_bits(const Rational& x, const Rational& p, unsigned bits);

/// [n]_q = 1 + q + ... + q^{n-1}
Rational q_integer(unsigned n, const Rational& q);
/// [n]_q! = [n]_q [n-1]_q ... [1]_q
Rational q_factorial(unsigned n, const Rational& q);
/// Gaussian binomial [n choose j]_q. Requires j <= n and q > 1.
Rational q_binomial(unsigned n, unsigned j, const Rational& q);

}  // namespace pgm
