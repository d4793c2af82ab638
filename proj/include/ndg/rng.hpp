// Copyright (c) 2026 The ndgbench authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NDG_RNG_HPP
#define NDG_RNG_HPP

#include <cstdint>

namespace ndg {

/// SplitMix64 generator (Steele/Lea/Vigna). Chosen over std::mt19937 so that
/// a seed reproduces the same amplitude sequence in any language that copies
/// these three lines. State advances by the 64-bit golden ratio; output is
/// the finalized state.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1): top 53 bits of the next output.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

private:
  std::uint64_t state_;
};

}  // namespace ndg

#endif
