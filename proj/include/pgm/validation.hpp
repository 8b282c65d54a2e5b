#pragma once

// Exact identity suite. Each check sweeps a parameter grid and records every
// disagreement with the partition, the parameters and both values.

#include "pgm/measures.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pgm {

struct IdentityResult {
    IdentityResult() = default;
    IdentityResult(std::string name_, std::string parameters_)
        : name(std::move(name_)), parameters(std::move(parameters_)) {}

    std::string name;
    std::string parameters;
    std::uint64_t cases = 0;
    std::uint64_t failure_count = 0;
    std::vector<std::string> failures;  ///< first few failures, in full
    std::vector<std::string> notes;

    bool passed() const { return failure_count == 0 && cases > 0; }
    void fail(std::string message);
};

struct ValidationReport {
    std::string preset;
    std::vector<IdentityResult> results;
    bool passed() const;
};

struct GeneralParameters {
    Rational p;
    Rational u;
};

/// Subgroup-count form of P_{d,u} equals the defining form.
IdentityResult check_dual_form(const std::vector<GeneralParameters>& grid, unsigned max_d, unsigned max_size);
/// Principal specialization of Hall-Littlewood polynomials equals P_{d,u}.
IdentityResult check_hall_littlewood(const std::vector<GeneralParameters>& grid, unsigned max_d, unsigned max_size);
/// Kernel rows sum to 1 for a <= max_state; path products equal pmf for d <= max_d.
IdentityResult check_general_chain(const std::vector<GeneralParameters>& grid, unsigned max_state, unsigned max_d,
                                   unsigned max_size);
IdentityResult check_symmetric_chain(const std::vector<Rational>& primes, unsigned max_n, unsigned max_size);
/// Size law, joint size/parts law and parts law against sums of pmf.
IdentityResult check_marginals(const std::vector<GeneralParameters>& grid, unsigned max_d, unsigned max_n,
                               unsigned parts_truncation);
IdentityResult check_alternating_specialization(const std::vector<unsigned>& sizes, const std::vector<Rational>& primes,
                                                unsigned max_size);
IdentityResult check_subgroup_zeta(unsigned max_d, unsigned max_n, const std::vector<Rational>& primes);
/// Truncated moments (with tail bound) enclose the closed form.
IdentityResult check_moments(const std::vector<Partition>& mus, const std::vector<Dimension>& dims,
                             const std::vector<GeneralParameters>& grid, unsigned max_size);
IdentityResult check_torsion(const std::vector<unsigned>& levels, const std::vector<Dimension>& dims,
                             const std::vector<GeneralParameters>& grid, unsigned max_size);
/// Product-formula subgroup counts against independent oracles, for every
/// lambda with p^{|lambda|} <= max_order. Subgroup-lattice enumeration is used
/// while the lattice has at most `enumeration_budget` subgroup-element visits;
/// larger groups use the generator-tuple count.
IdentityResult check_subgroup_counts(const std::vector<std::uint64_t>& primes, std::uint64_t max_order,
                                     std::uint64_t enumeration_budget);

/// "quick" or "full"; throws std::invalid_argument otherwise.
ValidationReport run_validation(std::string_view preset);

}  // namespace pgm
