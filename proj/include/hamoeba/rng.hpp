#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace hamoeba {

/// Counter-derived random stream.
///
/// Every sample index gets its own stream, derived from (seed, index), so a
/// sampled set does not depend on how the index range is split across
/// workers. The generator is SplitMix64; uniform and normal variates are
/// produced here rather than through <random> distributions so that the
/// sequence is identical across standard library implementations.
class Stream {
 public:
  using result_type = std::uint64_t;

  Stream(std::uint64_t seed, std::uint64_t index) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform on [0, 1).
  double uniform() noexcept;
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Standard normal (Box-Muller, one variate per call).
  double normal() noexcept;

 private:
  std::uint64_t state_;
};

std::uint64_t mix64(std::uint64_t x) noexcept;

/// Hashes a label into a seed offset (FNV-1a).
constexpr std::uint64_t label_hash(std::string_view label) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char ch : label) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Derives an independent seed for a named sub-experiment.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label) noexcept;

inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) noexcept {
  return derive_seed(seed, label_hash(label));
}

}  // namespace hamoeba
