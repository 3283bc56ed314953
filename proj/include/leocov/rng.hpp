#pragma once

#include <cstdint>
#include <random>

namespace leocov {

using RandomEngine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent stream for one trial; depends only on (seed, index, stream),
// never on which worker runs the trial.
inline RandomEngine trial_engine(std::uint64_t seed, std::uint64_t index, std::uint64_t stream = 0) {
    const std::uint64_t h = splitmix64(splitmix64(splitmix64(seed) ^ index) ^ (stream * 0xd1b54a32d192ed03ULL));
    std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(stream)};
    return RandomEngine(seq);
}

// 53 random bits in [0, 1)
inline double uniform01(RandomEngine& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace leocov
