#pragma once

// Portable randomness. std::mt19937_64 produces the same stream everywhere;
// the standard distributions do not, so bounded draws, shuffles and Bernoulli
// trials are done here on raw engine output.

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace cwcmatch::detail {

using Engine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Independent engine for sub-stream `stream` of a run seeded with `seed`.
inline Engine make_stream(std::uint64_t seed, std::uint64_t stream) {
    return Engine(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
}

/// Uniform integer in [0, bound), bound > 0, by rejection of the biased tail.
inline std::uint64_t uniform_below(Engine& eng, std::uint64_t bound) {
    const std::uint64_t reject_below = (0 - bound) % bound;
    while (true) {
        const std::uint64_t r = eng();
        if (r >= reject_below) return r % bound;
    }
}

template <class T>
void shuffle(std::span<T> items, Engine& eng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_below(eng, i));
        std::swap(items[i - 1], items[j]);
    }
}

/// Threshold such that `eng() < threshold` has probability p (clamped to [0, 1]).
inline std::uint64_t probability_threshold(double p) {
    if (!(p > 0.0)) return 0;
    if (p >= 1.0) return UINT64_MAX;
    return static_cast<std::uint64_t>(std::ldexp(p, 64));
}

}  // namespace cwcmatch::detail
