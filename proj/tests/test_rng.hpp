#pragma once

#include <cstdint>
#include <random>

// Seeded, platform-stable uniforms: raw mt19937_64 bits mapped to [0,1).
// std::uniform_real_distribution is implementation-defined, so tests avoid it.
struct TestRng {
  explicit TestRng(std::uint64_t seed) : eng(seed) {}
  double uniform() { return double(eng() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + int(eng() % std::uint64_t(hi - lo + 1));
  }
  std::mt19937_64 eng;
};
