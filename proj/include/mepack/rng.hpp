#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace mepack::rng {

// Stateless counter-based generator. Every output word is a pure function of
// (seed, stream, counter), so draws can be evaluated in any order and split
// across threads without coordination.

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t word(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ull);
    h = mix64(h ^ (stream + 0x243f6a8885a308d3ull));
    return mix64(h ^ (counter + 0x452821e638d01377ull));
}

// Uniform on (0, 1); never returns 0, so logs are safe.
inline double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return static_cast<double>(word(seed, stream, counter) >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

// Standard normal pair by Box-Muller from counters (2c, 2c+1).
inline std::pair<double, double> normal_pair(std::uint64_t seed, std::uint64_t stream,
                                             std::uint64_t counter) {
    const double u1 = uniform01(seed, stream, 2 * counter);
    const double u2 = uniform01(seed, stream, 2 * counter + 1);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace mepack::rng
