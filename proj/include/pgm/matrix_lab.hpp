#pragma once

// Random p-adic matrices truncated to Z/p^k, Smith normal form over Z/p^k,
// cokernel types, the random-quotient process, and comparison of empirical
// laws against exact measures.

#include "pgm/measures.hpp"
#include "pgm/random_stream.hpp"
#include "pgm/samplers.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pgm {

struct Ensemble {
    enum class Kind { Square, Rect, Alternating, Symmetric };
    Kind kind = Kind::Square;
    unsigned rows = 1;
    unsigned cols = 1;

    static Ensemble square(unsigned d);
    static Ensemble rect(unsigned rows, unsigned cols);
    static Ensemble alternating(unsigned n);
    static Ensemble symmetric(unsigned n);

    /// "square:2", "rect:2x3", "alt:4", "sym:3". Throws std::invalid_argument.
    static Ensemble parse(std::string_view text);
    std::string to_string() const;
    void validate() const;
};

/// Row-major matrix with entries in [0, p^k). Requires p^k < 2^62.
class ModPKMatrix {
public:
    ModPKMatrix(unsigned rows, unsigned cols, std::uint64_t p, unsigned k);

    unsigned rows() const { return rows_; }
    unsigned cols() const { return cols_; }
    std::uint64_t p() const { return p_; }
    unsigned k() const { return k_; }
    std::uint64_t modulus() const { return modulus_; }

    std::uint64_t operator()(unsigned i, unsigned j) const { return entries_[i * cols_ + j]; }
    /// Stores value mod p^k.
    void set(unsigned i, unsigned j, std::uint64_t value) { entries_[i * cols_ + j] = value % modulus_; }

    ModPKMatrix operator*(const ModPKMatrix& rhs) const;
    friend bool operator==(const ModPKMatrix&, const ModPKMatrix&) = default;

private:
    unsigned rows_;
    unsigned cols_;
    std::uint64_t p_;
    unsigned k_;
    std::uint64_t modulus_;
    std::vector<std::uint64_t> entries_;
};

/// Haar measure pushed forward to Z/p^k: free entries i.i.d. uniform, the
/// rest fixed by the symmetry of the ensemble.
ModPKMatrix random_matrix(const Ensemble& ensemble, std::uint64_t p, unsigned k, RandomStream& stream);

/// The min(rows, cols) diagonal valuations of a Smith form, ascending; a
/// valuation of k means the entry is 0 mod p^k.
struct SmithValuations {
    std::vector<unsigned> valuations;
    unsigned saturated = 0;
};
SmithValuations smith_valuations(ModPKMatrix m);

/// A partition, or nullopt when some valuation reached the precision k.
using CokernelSample = std::optional<Partition>;

/// Torsion type of the cokernel, from the nonzero Smith valuations.
CokernelSample cokernel_type(const ModPKMatrix& m);
/// For alternating ensembles: the type of H where the cokernel is H x H.
/// Unpaired parts are reported as ambiguous.
CokernelSample halve_alternating(const CokernelSample& sample);

EmpiricalDistribution monte_carlo_cokernel(const Ensemble& ensemble, std::uint64_t p, unsigned k,
                                           std::uint64_t trials, std::uint64_t seed, unsigned jobs = 1);

/// Draw mu from P_{inf,1}, w uniform elements of the group of type mu, and
/// return the type of the quotient by the subgroup they generate.
CokernelSample random_quotient_process(unsigned w, std::uint64_t p, RandomStream& stream,
                                       PartitionSampler& group_sampler);
EmpiricalDistribution monte_carlo_quotient(unsigned w, std::uint64_t p, std::uint64_t trials,
                                           std::uint64_t seed, unsigned jobs = 1);

/// Total-variation distance with truncation terms:
///   1/2 sum_{support} |f - P| + 1/2 (empirical mass off support + exact mass off support).
/// Interval masses use midpoints in the sum and their lower bounds for the
/// off-support remainder. Ambiguous samples count as off-support mass.
Rational tv_distance(const EmpiricalDistribution& emp, const MeasureSpec& spec, const std::vector<Partition>& support);

/// Exact law of the cokernel over all p^{k * free entries} matrices.
EmpiricalDistribution exhaustive_cokernel_law(const Ensemble& ensemble, std::uint64_t p, unsigned k);

/// prod_{i=w+1}^{d+w} (1 - p^{-i}): probability that a d x (d+w) p-adic matrix is onto.
Rational full_rank_probability(unsigned d, unsigned w, const Rational& p);

}  // namespace pgm
