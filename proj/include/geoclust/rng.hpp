#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace geoclust {

/// splitmix64 finalizer; used to decorrelate user seeds and substreams.
std::uint64_t mix_seed(std::uint64_t x);

/// Seeded random source with fully specified output mapping. std::mt19937_64
/// drives it, but uniform/normal draws avoid std distributions so that a seed
/// reproduces the same stream on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix_seed(seed)) {}

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return (engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Unbiased integer in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n);

    /// Standard normal via Box-Muller (pairs cached).
    double normal();

    /// Independent child seed for substream index `stream`.
    std::uint64_t fork_seed(std::uint64_t stream) const;

    /// Fisher-Yates permutation of 0..n-1.
    std::vector<std::size_t> permutation(std::size_t n);

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace geoclust
