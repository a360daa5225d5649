#pragma once

#include <cstdint>
#include <random>

namespace lrh {

// splitmix64, used to derive independent per-image stream seeds from a
// master seed so that generation order (and threading) cannot change results.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::mt19937_64 make_rng(uint64_t seed) { return std::mt19937_64(seed); }

/// Deterministic per-stream RNG: stream k of master seed s.
inline std::mt19937_64 make_stream_rng(uint64_t seed, uint64_t stream) {
    uint64_t s = seed ^ (0x517cc1b727220a95ULL * (stream + 1));
    uint64_t a = splitmix64(s);
    uint64_t b = splitmix64(s);
    std::seed_seq seq{static_cast<uint32_t>(a), static_cast<uint32_t>(a >> 32),
                      static_cast<uint32_t>(b), static_cast<uint32_t>(b >> 32)};
    return std::mt19937_64(seq);
}

} // namespace lrh
