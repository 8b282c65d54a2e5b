#pragma once

// Probability measures on partitions.
//
//   GeneralDU     P_{d,u}(lambda) = u^{|lambda|} (u/p)_d (1/p)_d / (|Aut lambda| (1/p)_{d-r})
//   GeneralInfU   the d -> infinity limit, u^{|lambda|} (u/p)_inf / |Aut lambda|
//   Alternating   cokernel law of a Haar-random alternating n x n p-adic matrix,
//                 indexed by the type of H where the cokernel is H x H
//   Symmetric     cokernel law of a Haar-random symmetric n x n p-adic matrix
//   SymmetricInf  its n -> infinity limit
//
// Finite families have exact Rational masses; the infinite ones are enclosed
// by IntervalRationals of width below 2^-bits.

#include "pgm/partition.hpp"
#include "pgm/rational.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pgm {

/// A dimension parameter that may be infinite (std::nullopt).
using Dimension = std::optional<unsigned>;
inline constexpr Dimension kInfinite = std::nullopt;

inline constexpr unsigned kDefaultBits = 64;

enum class Family { GeneralDU, GeneralInfU, Alternating, Symmetric, SymmetricInf };

struct MeasureSpec {
    Family family = Family::GeneralDU;
    Rational p{2};
    Rational u{1};    ///< General families only
    unsigned d = 1;   ///< GeneralDU only
    unsigned n = 0;   ///< matrix size for Alternating / Symmetric

    static MeasureSpec general(const Rational& p, const Rational& u, Dimension d);
    static MeasureSpec alternating(unsigned n, const Rational& p);
    static MeasureSpec symmetric(unsigned n, const Rational& p);
    static MeasureSpec symmetric_infinite(const Rational& p);

    /// "general:p=2,u=1/2,d=3", "general:p=2,u=1,d=inf", "alt:p=3,n=4",
    /// "sym:p=2,n=3", "syminf:p=2". Throws std::invalid_argument.
    static MeasureSpec parse(std::string_view text);
    std::string to_string() const;

    /// Throws std::invalid_argument when the parameters are out of range.
    void validate() const;

    bool is_exact() const { return family != Family::GeneralInfU && family != Family::SymmetricInf; }
    Dimension dimension() const;
    /// Largest number of parts with positive mass, or nullopt when unbounded.
    std::optional<unsigned> max_parts() const;

    friend bool operator==(const MeasureSpec&, const MeasureSpec&) = default;
};

/// Alternating(n, p) as the general measure with p -> p^2, u -> p, d -> n/2.
MeasureSpec alternating_as_general(const MeasureSpec& alt);

IntervalRational pmf(const MeasureSpec& spec, const Partition& lambda, unsigned bits = kDefaultBits);
/// Exact mass; throws std::invalid_argument for the infinite families.
Rational pmf_exact(const MeasureSpec& spec, const Partition& lambda);

/// P_{d,u}(lambda) through subgroup counts of the rectangular group (n^d):
///     u^{|lambda|} p^{-|lambda| d} prod_i p^{lambda'_{i+1}(d - lambda'_i)} [d - lambda'_{i+1}, lambda'_i - lambda'_{i+1}]_p (u/p)_d
Rational pmf_subgroup_form(const Rational& p, const Rational& u, unsigned d, const Partition& lambda);

/// Probability of exactly r parts. Supports every family.
IntervalRational prob_num_parts(const MeasureSpec& spec, unsigned r, unsigned bits = kDefaultBits);
/// Probability of size n. General families and Alternating.
IntervalRational prob_size(const MeasureSpec& spec, unsigned n, unsigned bits = kDefaultBits);
/// Probability of size n with exactly r parts. General families and Alternating.
IntervalRational prob_size_and_parts(const MeasureSpec& spec, unsigned n, unsigned r, unsigned bits = kDefaultBits);

/// Lower bound on (1/p)_inf, positive for every p > 1.
Rational inverse_pochhammer_floor(const Rational& p);

/// Upper bound on sum_{n > max_size} ratio^n / c with ratio = u/p, i.e. on
/// P(|lambda| > max_size), given c <= (1/p)_inf. Requires 0 <= ratio < 1.
Rational geometric_size_tail(const Rational& ratio, const Rational& pochhammer_floor, unsigned max_size);

/// Rigorous upper bound on P(|lambda| > max_size). General families and Alternating.
Rational tail_bound_size(const MeasureSpec& spec, unsigned max_size);
/// Smallest N with tail_bound_size(spec, N) <= epsilon.
unsigned size_cutoff(const MeasureSpec& spec, const Rational& epsilon);

struct SpecializationPair {
    Rational general;
    Rational alternating;
};
SpecializationPair alternating_specialization_check(unsigned n, const Rational& p, const Partition& lambda);

/// Partitions in the support, added size by size (reverse lexicographic within
/// a size) until the lower bounds of their masses sum to at least `mass`.
/// Throws std::runtime_error if that needs partitions larger than `size_limit`.
std::vector<Partition> support_with_mass(const MeasureSpec& spec, const Rational& mass,
                                         unsigned size_limit = 200, unsigned bits = kDefaultBits);

}  // namespace pgm
