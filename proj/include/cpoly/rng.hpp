#pragma once

#include <cstdint>

namespace cpoly {

// SplitMix64: the counter-based generator every implementation of the scene
// corpus must reproduce. Streams are derived from (seed, stream index) with
// the same mix function, so per-trial sequences are independent of scheduling.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30; z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27; z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  // Stream derivation: seed XOR (golden-ratio stride of the stream index),
  // passed through the mix.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t stream_index) {
    return SplitMix64(mix(seed ^ (0x9E3779B97F4A7C15ull * (stream_index + 1))));
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix(state_);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  int uniform_int(int lo, int hi_inclusive) {
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi_inclusive - lo + 1));
  }

private:
  std::uint64_t state_;
};

}  // namespace cpoly
