#pragma once

#include <cstdint>

namespace voltroute {

// SplitMix64: platform-stable 64-bit generator (public-domain reference
// constants). Used for all randomized mission generation so results are
// reproducible across compilers, platforms, and worker counts.
constexpr uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

constexpr uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

 private:
  uint64_t state_;
};

// Stream-splitting scheme: mission k draws from an independent generator
// whose initial state is mix64(seed + (k + 1) * golden gamma). Every worker
// can therefore produce mission k without generating missions 0..k-1, and
// the ensemble is identical for any worker count.
inline SplitMix64 mission_stream(uint64_t seed, uint64_t mission_index) {
  return SplitMix64(mix64(seed + (mission_index + 1) * kGoldenGamma));
}

}  // namespace voltroute
