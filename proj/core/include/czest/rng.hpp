#pragma once

#include <cstdint>

namespace czest {

/// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/**
 * Counter-based generator: the value at (seed, step, channel, index) is a pure
 * function of those four keys, so draws never depend on call order.
 */
class CounterRng
{
public:
    CounterRng(std::uint64_t seed, std::uint64_t step, std::uint64_t channel)
        : key_(mix64(mix64(mix64(seed) ^ step) ^ (channel * 0xd1b54a32d192ed03ULL)))
    {
    }

    std::uint64_t at(std::uint64_t index) const { return mix64(key_ ^ mix64(index)); }

    /// Uniform in [0, 1).
    double uniform01(std::uint64_t index) const { return static_cast<double>(at(index) >> 11) * 0x1p-53; }

    /// Uniform in [lo, hi].
    double uniform(std::uint64_t index, double lo, double hi) const { return lo + (hi - lo) * uniform01(index); }

    /// Sequential draws for callers that just need a stream.
    double next_uniform(double lo, double hi) { return uniform(counter_++, lo, hi); }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace czest
