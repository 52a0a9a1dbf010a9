#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace vosim {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derives an independent stream seed from (seed, label). FNV-1a over the
// label, then one splitmix round so nearby seeds do not correlate.
inline std::uint64_t mix_seed(std::uint64_t seed, std::string_view label) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : label) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return splitmix64(seed ^ h);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    return splitmix64(seed ^ splitmix64(salt));
}

// Unbiased index in [0, n), n > 0. Rejection sampling keeps the result
// identical on every platform for a given engine state.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    const std::uint64_t span = static_cast<std::uint64_t>(n);
    const std::uint64_t threshold = (0 - span) % span;  // 2^64 mod span
    std::uint64_t draw = rng();
    while (draw < threshold)
        draw = rng();
    return static_cast<std::size_t>(draw % span);
}

}  // namespace vosim
