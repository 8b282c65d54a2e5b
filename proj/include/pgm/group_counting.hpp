#pragma once

// Counts attached to a finite abelian p-group of type lambda,
//     G = Z/p^{lambda_1} x ... x Z/p^{lambda_r}.
//
// All functions accept any rational p > 1. For prime p they are actual group
// counts; otherwise they are the polynomial expressions evaluated at p.

#include "pgm/partition.hpp"
#include "pgm/rational.hpp"

namespace pgm {

/// |Aut(lambda)| = p^{sum (lambda'_i)^2} prod_i (1/p)_{m_i(lambda)}
Rational aut_order(const Partition& lambda, const Rational& p);

/// Order of the symplectic group of H x H with its standard alternating pairing,
/// H of type lambda: p^{4 n(lambda) + 3|lambda|} prod_i prod_{j=1}^{m_i} (1 - p^{-2j}).
Rational sp_order(const Partition& lambda, const Rational& p);

/// n_lambda(mu), the number of subgroups of type mu (Birkhoff's product
/// formula over conjugate parts). Zero unless mu is contained in lambda.
Rational subgroup_count(const Partition& lambda, const Partition& mu, const Rational& p);

/// |Sur(lambda, mu)| = n_lambda(mu) |Aut(mu)|
Rational sur_count(const Partition& lambda, const Partition& mu, const Rational& p);

/// |Hom(lambda, mu)| = p^{sum_{i,j} min(lambda_i, mu_j)}
Rational hom_count(const Partition& lambda, const Partition& mu, const Rational& p);

/// T_ell = |G[p^ell]| = p^{lambda'_1 + ... + lambda'_ell}
Rational torsion_count(const Partition& lambda, unsigned ell, const Rational& p);

}  // namespace pgm
