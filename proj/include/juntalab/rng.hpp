#pragma once

#include <cstdint>
#include <random>

namespace juntalab {

// splitmix64; used to derive independent streams from (seed, stream index)
// and to fix per-subset oracle overrides at construction time.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ mix64(b));
}

// One RNG per (seed, stream): trials are reproducible regardless of
// execution order or worker count.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(mix64(seed, stream));
}

}  // namespace juntalab
