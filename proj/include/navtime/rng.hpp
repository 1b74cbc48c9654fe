#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <random>

namespace navtime {

/// splitmix64 step; advances `state` and returns the next output.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Deterministically derives an independent stream seed from a master seed
/// and up to two stream indices. Used so that trials, resampling attempts and
/// baselines each own a private generator.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t index = 0) {
    std::uint64_t s = master + 0x9E3779B97F4A7C15ull * (stream + 1);
    std::uint64_t h = splitmix64(s);
    s = h + 0x9E3779B97F4A7C15ull * (index + 1);
    return splitmix64(s);
}

/// Unbiased draw from {0, ..., n-1}. Rejection on the top sliver of the
/// 64-bit range keeps the result exactly uniform and reproducible across
/// standard libraries (std::uniform_int_distribution is
/// implementation-defined).
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    assert(n > 0);
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace navtime
