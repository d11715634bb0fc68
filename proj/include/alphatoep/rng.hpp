#pragma once

#include <cstdint>
#include <vector>

#include "alphatoep/core.hpp"

namespace alphatoep {

/// splitmix64 generator. Fixed, documented update so seeded sweeps reproduce
/// bit-exactly across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0,1) with 53 bits of precision.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [-1,1).
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }

  cdbl next_complex() {
    double re = next_symmetric();
    double im = next_symmetric();
    return {re, im};
  }

 private:
  uint64_t state_;
};

inline std::vector<cdbl> random_coeffs(long long count, uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<cdbl> a(static_cast<size_t>(count));
  for (auto& z : a) z = rng.next_complex();
  return a;
}

}  // namespace alphatoep
