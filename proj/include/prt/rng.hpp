#pragma once

#include <cstdint>
#include <vector>

namespace prt {

/// Counter-based deterministic PRNG (SplitMix64 finalizer in counter mode).
///
///   out_i = mix64(key + (i+1) * 0x9E3779B97F4A7C15)
///   key   = mix64(seed ^ 0x6A09E667F3BCC909) ^ mix64(stream ^ 0xBB67AE8584CAA73B)
///
/// mix64 is the SplitMix64 finalizer (Steele, Lea & Flood 2014):
///   z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
///   z ^= z >> 27; z *= 0x94D049BB133111EB;
///   z ^= z >> 31.
///
/// Output depends only on (seed, stream, counter), so the same (seed, stream)
/// reproduces the same sequence on any platform; distinct streams give
/// independent sequences for parallel per-split generation.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53 random mantissa bits.
  double next_double();

  /// Standard normal via Box-Muller; u1 is forced into (0, 1] so the log is
  /// always finite. Consumes two uniforms per pair, second value cached.
  double next_gaussian();

  /// Uniform integer in [0, n), unbiased (rejection sampling). n must be > 0.
  std::uint64_t next_below(std::uint64_t n);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_cached_gaussian_ = false;
  double cached_gaussian_ = 0.0;
};

}  // namespace prt
