#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace portopt {

// Stateful generator used by all sampling APIs. Portable across platforms for a
// fixed standard library; determinism contracts in this project are per-binary.
using Rng = std::mt19937_64;

// splitmix64 finalizer: a bijective 64-bit avalanche mix.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic stream derivation: folds context words (worker index, candidate
// index, phase tags, ...) into a master seed. Every parallel or per-candidate
// stream in this project is derived through this function so that results do
// not depend on scheduling.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> words) {
  std::uint64_t s = mix64(master ^ 0x5eedc0de5eedc0deULL);
  for (std::uint64_t w : words) s = mix64(s ^ w);
  return s;
}

// Uniform double in [0, 1) with 53-bit resolution.
inline double next_double(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Bernoulli(p), exact at p = 0 and p = 1 (and at any multiple of 2^-53).
inline bool next_bernoulli(Rng& rng, double p) {
  return static_cast<double>(rng() >> 11) < p * 9007199254740992.0;  // p * 2^53
}

// Unbiased uniform draw from [0, n); rejection keeps the draw exactly uniform.
inline std::uint64_t next_below(Rng& rng, std::uint64_t n) {
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

}  // namespace portopt
