#pragma once

#include <cstdint>

namespace eprsim {

/// SplitMix64: small, fast generator with a fixed algorithm, so streams are
/// bit-identical across platforms and build modes.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Stream-splitting rule: the pair with global index k in an experiment
/// seeded with s draws exclusively from SplitMix64(pair_stream_seed(s, k)).
/// Substreams depend only on (s, k), so any partitioning of pairs across
/// workers reproduces the sequential run exactly.
inline std::uint64_t pair_stream_seed(std::uint64_t seed, std::uint64_t pair_index) {
  SplitMix64 mix(seed ^ (0xA0761D6478BD642FULL + pair_index * 0xE7037ED1A0B428DBULL));
  return mix.next_u64();
}

}  // namespace eprsim
