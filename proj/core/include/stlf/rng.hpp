#pragma once

#include <cstdint>
#include <string_view>

namespace stlf {

/// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Derives an independent child seed from a parent seed and a stream index.
///
/// derive_seed(s, i) = mix64(mix64(s) ^ mix64(i + 0x632be59bd9b4e019)).
/// Trial seeds are derive_seed(master, hash(task label) ^ trial index) and
/// episode seeds are derive_seed(trial seed, evaluation index); see
/// falsify/campaign.hpp for the exact splitting rule.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept;

/// FNV-1a, used to key seed streams by label.
std::uint64_t hash_label(std::string_view label) noexcept;

/// Counter-based random stream.
///
/// The i-th raw output is mix64(seed + (i+1) * 0x9e3779b97f4a7c15), so the
/// sequence depends only on the seed. Uniforms use the top 53 bits; normals
/// use the Box-Muller transform on two consecutive uniforms and cache the
/// second variate.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next_u64() noexcept;

  /// Uniform on [0, 1).
  double uniform() noexcept;

  /// Uniform on [lo, hi].
  double uniform(double lo, double hi) noexcept;

  /// Standard normal.
  double normal() noexcept;

 private:
  std::uint64_t state_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace stlf
