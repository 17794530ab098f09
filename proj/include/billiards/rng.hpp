#pragma once
// Every random stream derives from one seed through splitmix64, so a stream
// depends only on (seed, stream id), never on scheduling.

#include <cstdint>
#include <random>

#include "billiards/geometry.hpp"

namespace billiards {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ (stream * 0xd1342543de82ef95ULL + 1));
}

inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(derive_seed(seed, stream));
}

/// Uniform (alpha, beta) in (delta, pi - 2 delta)^2, rejected until gamma > delta.
inline TriangleShape random_triangle(std::mt19937_64& rng, double delta = kDefaultDelta) {
    std::uniform_real_distribution<double> u(delta, kPi - 2 * delta);
    while (true) {
        const double a = u(rng);
        const double b = u(rng);
        if (a > delta && b > delta && kPi - a - b > delta) return make_triangle(a, b, delta);
    }
}

}  // namespace billiards
