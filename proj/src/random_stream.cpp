#include "pgm/random_stream.hpp"

#include <stdexcept>

namespace pgm {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed), key_(mix(seed + kGolden)) {}

std::uint64_t RandomStream::next()
{
    ++counter_;
    return mix(key_ + counter_ * kGolden);
}

std::uint64_t RandomStream::uniform_below(std::uint64_t bound)
{
    if (bound == 0)
        throw std::invalid_argument("uniform_below needs a positive bound");
    // accept below the largest multiple of bound
    const std::uint64_t limit = -bound % bound;
    for (;;) {
        std::uint64_t x = next();
        if (x >= limit)
            return x % bound;
    }
}

}  // namespace pgm
