#pragma once

#include <cstdint>
#include <random>

namespace cdperc {

// All randomness in the project flows from explicit 64-bit seeds through the
// helpers below. Sub-streams are derived by a splittable counter construction
// so that trial t is a pure function of (master_seed, t) and parallel runs
// merge into the same result as serial ones.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed of the index-th sub-stream of root.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  return splitmix64(root ^ ((index + 1) * 0x9E3779B97F4A7C15ULL));
}

using RandomEngine = std::mt19937_64;

inline RandomEngine make_engine(std::uint64_t seed) {
  return RandomEngine(seed);
}

// Unbiased uniform draw from [0, bound) by rejection. Avoids
// std::uniform_int_distribution so the byte stream is pinned by this code
// alone, not by a standard-library implementation choice.
inline std::uint64_t uniform_below(RandomEngine& eng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t r = eng();
    if (r >= threshold) return r % bound;
  }
}

}  // namespace cdperc
