#pragma once

#include <cstdint>

namespace laser {

// Counter-based deterministic RNG. Every random decision in the toolkit is a
// pure function of (seed, counter words), so generation order and thread
// count cannot change results.

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t a,
                                  std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t h = mix64(seed + kGolden);
  h = mix64(h ^ (a + kGolden));
  h = mix64(h ^ (b + 0xd1b54a32d192ed03ULL));
  h = mix64(h ^ (c + 0x8bb84b93962eacc9ULL));
  return h;
}

// Uniform double in [0, 1) from one 64-bit word.
inline double uniform_unit(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

}  // namespace laser
