#pragma once

// Exact Markov-chain samplers over conjugate parts, and empirical tallies.
//
// The chain starts at lambda'_0 = d (or n) and moves a -> b <= a with
// probability K(a,b); it stops at the first b = 0 and returns the partition
// with columns lambda'_1 >= lambda'_2 >= ... . Each step compares a uniform
// real, revealed 64 bits at a time, with the exact cumulative row, so draws
// carry no rounding bias.

#include "pgm/measures.hpp"
#include "pgm/random_stream.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace pgm {

/// K(a,b) = u^b (1/p)_a (u/p)_a / (p^{b^2} (1/p)_{a-b} (1/p)_b (u/p)_b), 0 <= b <= a <= d.
Rational kernel_general(unsigned a, unsigned b, unsigned d, const Rational& u, const Rational& p);
/// First step of the d = infinity chain: u^b (u/p)_inf / (p^{b^2} (1/p)_b (u/p)_b).
IntervalRational kernel_general_first_step_inf(unsigned b, const Rational& u, const Rational& p,
                                               unsigned bits = kDefaultBits);
/// K(a,b) = prod_{i<=a}(1-p^{-i}) / (p^{C(b+1,2)} prod_{i<=b}(1-p^{-i}) prod_{j<=floor((a-b)/2)}(1-p^{-2j})),
/// 0 <= b <= a <= n.
Rational kernel_sym(unsigned a, unsigned b, unsigned n, const Rational& p);

class PartitionSampler {
public:
    /// GeneralDU, GeneralInfU, Symmetric, and Alternating (through its general form).
    explicit PartitionSampler(const MeasureSpec& spec);
    ~PartitionSampler();
    PartitionSampler(PartitionSampler&&) noexcept;
    PartitionSampler& operator=(PartitionSampler&&) noexcept;

    /// Not safe to call concurrently on one sampler; rows are built lazily.
    Partition operator()(RandomStream& stream);

    const MeasureSpec& spec() const { return spec_; }

private:
    struct Rows;
    MeasureSpec spec_;
    std::unique_ptr<Rows> rows_;
};

Partition sample_partition(const MeasureSpec& spec, RandomStream& stream);

struct EmpiricalDistribution {
    std::map<Partition, std::uint64_t> counts;
    std::uint64_t total = 0;
    std::uint64_t ambiguous = 0;

    void add(const Partition& lambda, std::uint64_t times = 1);
    void add_ambiguous(std::uint64_t times = 1);
    /// A partition, or nullopt for a truncation-ambiguous outcome.
    void add(const std::optional<Partition>& outcome);
    void merge(const EmpiricalDistribution& other);

    std::uint64_t count(const Partition& lambda) const;
    /// count / total as an exact fraction (0 when total is 0).
    Rational frequency(const Partition& lambda) const;

    friend bool operator==(const EmpiricalDistribution&, const EmpiricalDistribution&) = default;
};

EmpiricalDistribution empirical_pmf(const std::vector<Partition>& samples);

inline constexpr std::uint64_t kChunkSize = 4096;

/// Runs `trials` independent trials in chunks of kChunkSize. Chunk c uses the
/// stream seeded with seed xor c, and chunks are merged in index order, so
/// the result does not depend on `jobs`. `make_worker` is called once per
/// thread and returns the per-trial function.
using TrialFunction = std::function<std::optional<Partition>(RandomStream&)>;
EmpiricalDistribution run_trials(std::uint64_t trials, std::uint64_t seed, unsigned jobs,
                                 const std::function<TrialFunction()>& make_worker);

EmpiricalDistribution sample_many(const MeasureSpec& spec, std::uint64_t trials, std::uint64_t seed,
                                  unsigned jobs = 1);

}  // namespace pgm
