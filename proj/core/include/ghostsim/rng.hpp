#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "ghostsim/field.hpp"

namespace ghostsim {

/// Stateless counter-based random numbers: every draw is a pure function of
/// (key, stream, counter), so results do not depend on evaluation order.
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t key, std::uint64_t stream = 0) noexcept
      : base_(mix(mix(key ^ 0x6a09e667f3bcc908ULL) ^ (stream * 0x9e3779b97f4a7c15ULL))) {}

  /// SplitMix64 finalizer.
  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Derives an independent key, e.g. per realization or per trace segment.
  static constexpr std::uint64_t derive(std::uint64_t key, std::uint64_t index) noexcept {
    return mix(mix(key + 0xbb67ae8584caa73bULL) ^ mix(index));
  }

  constexpr std::uint64_t bits(std::uint64_t counter) const noexcept {
    return mix(base_ ^ mix(counter));
  }

  /// Uniform on (0, 1].
  double uniform(std::uint64_t counter) const noexcept {
    return static_cast<double>((bits(counter) >> 11) + 1) * 0x1.0p-53;
  }

  /// Circular complex Gaussian with E|g|^2 = 1 (two uniforms: counters 2c, 2c+1).
  Complex complex_normal(std::uint64_t counter) const noexcept {
    const double r = std::sqrt(-std::log(uniform(2 * counter)));
    const double phi = 2.0 * std::numbers::pi * uniform(2 * counter + 1);
    return {r * std::cos(phi), r * std::sin(phi)};
  }

  /// Standard normal (real part of a scaled complex Gaussian).
  double normal(std::uint64_t counter) const noexcept {
    return std::numbers::sqrt2 * complex_normal(counter).real();
  }

  /// Unit-mean exponential.
  double exponential(std::uint64_t counter) const noexcept {
    return -std::log(uniform(counter));
  }

 private:
  std::uint64_t base_;
};

}  // namespace ghostsim
