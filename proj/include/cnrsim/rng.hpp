#pragma once

#include <cmath>
#include <cstdint>

#include "cnrsim/errors.hpp"

namespace cnr {

/// Final avalanche stage of the SplitMix64 generator. Bijective on 64-bit
/// integers; used both for output mixing and for seed derivation.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Golden-ratio increment of the SplitMix64 counter.
inline constexpr std::uint64_t kSplitMix64Gamma = 0x9E3779B97F4A7C15ull;

/// Derives an independent child seed from a parent seed and a small tag.
/// Children with distinct tags give statistically independent streams; the
/// derivation is pure arithmetic, so seeds are stable across platforms.
constexpr std::uint64_t derive_seed(std::uint64_t parent,
                                    std::uint64_t tag) noexcept {
  return mix64(parent ^ (kSplitMix64Gamma * (tag + 1)));
}

/// Counter-based SplitMix64 pseudo-random generator.
///
/// The whole simulator draws randomness through this class so that a run is
/// reproducible bit-for-bit from its seed on any platform: the generator uses
/// only 64-bit integer arithmetic, and every floating-point variate below is
/// a fixed arithmetic expression of the integer output.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next_u64() noexcept {
    state_ += kSplitMix64Gamma;
    return mix64(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Exponential variate by inverse CDF: -mean * ln(1 - u). The mean may be
  /// zero (degenerate point mass at 0) but not negative.
  double next_exponential(double mean) {
    if (!(mean >= 0.0)) {
      throw invalid_parameter_error("exponential mean must be >= 0");
    }
    return -mean * std::log1p(-next_double());
  }

 private:
  std::uint64_t state_;
};

}  // namespace cnr
