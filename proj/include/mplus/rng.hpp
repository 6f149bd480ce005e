#pragma once

#include <cstdint>

namespace mplus {

// Small deterministic generator; seeded per sample so sweeps are
// order-independent and parallel-safe.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next()
    {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    double uniform() { return (next() >> 11) * 0x1.0p-53; }
};

inline SplitMix64 sample_rng(std::uint64_t seed, std::uint64_t index)
{
    return SplitMix64(seed ^ (0x9e3779b97f4a7c15ULL * (index + 0x42ULL)));
}

} // namespace mplus
