#pragma once

#include <cstdint>
#include <limits>

namespace sensecap {

/// Counter-based 64-bit generator: output i is a bijective mix of (key, i).
///
/// Streams are addressed by key, so per-row and per-trial generators can be
/// created in any order (or on any thread) and still produce the same draws.
/// Satisfies UniformRandomBitGenerator, so it plugs into <random> distributions.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) : key_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + (++counter_) * kGolden); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  std::uint64_t key() const { return key_; }

  static std::uint64_t mix(std::uint64_t z);

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Derives an independent stream key from (seed, a, b), e.g. (seed, trial, purpose).
std::uint64_t stream_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace sensecap
