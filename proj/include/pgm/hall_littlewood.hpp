#pragma once

// Hall-Littlewood polynomials by explicit symmetrization over S_n:
//
//     P_lambda(x_1..x_n; t) = 1/v_lambda(t) * sum_{w in S_n} w( x^lambda prod_{i<j} (x_i - t x_j)/(x_i - x_j) )
//
// Cost is n! terms, so the number of variables is capped.

#include "pgm/partition.hpp"
#include "pgm/rational.hpp"

#include <vector>

namespace pgm {

inline constexpr std::size_t kMaxHallLittlewoodVariables = 8;

/// prod_{i>=0} prod_{j=1}^{m_i} (1 - t^j)/(1 - t), with m_0 = n_vars - r(lambda).
Rational v_lambda(const Partition& lambda, unsigned n_vars, const Rational& t);

/// Throws std::invalid_argument when the x are not distinct and nonzero, when
/// there are fewer variables than parts, or more than `max_vars` variables.
Rational hl_eval(const Partition& lambda, const std::vector<Rational>& x, const Rational& t,
                 std::size_t max_vars = kMaxHallLittlewoodVariables);

/// (u/p)_d P_lambda(u/p, ..., u/p^d; 1/p) / p^{n(lambda)}; 0 when r(lambda) > d.
Rational hl_pmf(const Partition& lambda, unsigned d, const Rational& u, const Rational& p);

}  // namespace pgm
