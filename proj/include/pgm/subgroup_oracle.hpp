#pragma once

// Independent oracles for the counting formulas in group_counting.hpp.
//
// The enumeration routines build the group Z/p^{lambda_1} x ... x Z/p^{lambda_r}
// explicitly (elements are mixed-radix integers) and walk its subgroup lattice;
// they share no code with the closed-form counts. The generator-tuple count is
// a second, non-enumerative route that scales past the enumeration limit.

#include "pgm/partition.hpp"
#include "pgm/rational.hpp"

#include <cstdint>
#include <map>

namespace pgm {

inline constexpr std::uint64_t kDefaultEnumerationBound = std::uint64_t{1} << 16;

/// Every subgroup of the group of type lambda, classified two ways.
struct SubgroupCensus {
    std::map<Partition, std::uint64_t> by_type;           ///< type of H
    std::map<Partition, std::uint64_t> by_quotient_type;  ///< type of G/H
    std::uint64_t total = 0;
};

/// Enumerates all subgroups by extending each H to H + <g> with pg in H, starting from
/// the trivial subgroup; duplicates are removed on the element set.
/// Throws std::invalid_argument when p^{|lambda|} exceeds `max_order` or p is not prime.
SubgroupCensus subgroup_census(const Partition& lambda, std::uint64_t p,
                               std::uint64_t max_order = kDefaultEnumerationBound);

std::uint64_t subgroup_count_bruteforce(const Partition& lambda, const Partition& mu, std::uint64_t p,
                                        std::uint64_t max_order = kDefaultEnumerationBound);

/// Counts surjective homomorphisms by trying every assignment of the standard
/// generators of lambda and closing the image. Throws when the number of
/// assignments exceeds `max_assignments`.
std::uint64_t sur_count_bruteforce(const Partition& lambda, const Partition& mu, std::uint64_t p,
                                   std::uint64_t max_assignments = std::uint64_t{1} << 22);

/// |G[p^ell]| by scanning every element.
std::uint64_t torsion_count_bruteforce(const Partition& lambda, unsigned ell, std::uint64_t p,
                                       std::uint64_t max_order = kDefaultEnumerationBound);

/// |Sur(lambda, mu)| by counting generator images whose reductions modulo
/// p H_mu span H_mu / p H_mu (a transfer-matrix count over flag profiles).
Rational sur_count_by_generators(const Partition& lambda, const Partition& mu, const Rational& p);

/// Number of subgroups K with G/K of type mu, as |Sur(lambda,mu)| / |Sur(mu,mu)|,
/// both computed by sur_count_by_generators.
Rational subgroup_count_by_generators(const Partition& lambda, const Partition& mu, const Rational& p);

}  // namespace pgm
