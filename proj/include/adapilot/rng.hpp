#pragma once

#include <cstdint>
#include <random>

namespace adapilot {

// splitmix64 finalizer; used to derive independent seeds from a master seed
// plus one or more stream tags so that simulation streams (channel, noise,
// data bits, ...) stay decoupled and reproducible.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return mix_seed(mix_seed(a) ^ (b + 0x9e3779b97f4a7c15ULL));
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix_seed(mix_seed(a, b), c);
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64(seed);
}

// Stream tags for the per-link RNG streams derived from one run seed.
namespace stream {
inline constexpr std::uint64_t kChannel = 1;
inline constexpr std::uint64_t kNoise = 2;
inline constexpr std::uint64_t kDataBits = 3;
inline constexpr std::uint64_t kErasure = 4;
}  // namespace stream

}  // namespace adapilot
