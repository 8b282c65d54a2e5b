#pragma once

// Counter-based 64-bit generator: output i is a SplitMix64 finalizer applied to
// key + (i+1) * golden, with key derived from the seed. The sequence depends
// only on the seed, so runs are reproducible on every platform, and derived
// streams (seed xor index) give independent workers a deterministic split.

#include <cstdint>

namespace pgm {

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed);

    std::uint64_t next();
    /// Uniform on [0, bound) by rejection; bound must be positive.
    std::uint64_t uniform_below(std::uint64_t bound);

    /// Stream keyed by seed xor index.
    RandomStream derive(std::uint64_t index) const { return RandomStream(seed_ ^ index); }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t position() const { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace pgm
