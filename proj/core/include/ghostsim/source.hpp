#pragma once

#include <variant>
#include <vector>

#include "ghostsim/grid.hpp"

namespace ghostsim {

/// Top-hat intensity, 1 on [-half_width, half_width].
struct UniformProfile {
  double half_width;
};

/// exp(-2 x^2 / w^2) with w the 1/e^2 half-width.
struct GaussianProfile {
  double half_width;
};

/// Non-negative samples, linearly interpolated, zero outside the grid.
struct SampledProfile {
  TransverseGrid grid;
  std::vector<double> intensity;
};

using SourceProfile = std::variant<UniformProfile, GaussianProfile, SampledProfile>;

/// Closed interval on which a profile is (effectively) non-zero.
struct Support {
  double lo;
  double hi;
};

/// Spatially incoherent thermal source.
class SourceSpec {
 public:
  /// Validates wavelength > 0, coherence_time > 0 and a non-negative profile
  /// with non-zero integral; throws InvalidArgument otherwise.
  SourceSpec(double wavelength, SourceProfile profile, double coherence_time);

  double wavelength() const noexcept { return wavelength_; }
  double coherence_time() const noexcept { return coherence_time_; }
  const SourceProfile& profile() const noexcept { return profile_; }

  double intensity_at(double x) const noexcept;

  /// Region outside which the profile is zero (Gaussian: truncated at 4 half-widths,
  /// where it has fallen below 1.3e-14).
  Support support() const noexcept;

  /// Half-width used for coherence-width estimates: a for uniform, w for Gaussian,
  /// half the non-zero extent for sampled profiles.
  double characteristic_half_width() const noexcept;

  /// Integral of the profile over x (exact for uniform and Gaussian).
  double integral() const noexcept;

 private:
  double wavelength_;
  SourceProfile profile_;
  double coherence_time_;
};

/// Source-to-object (z1) and source-to-reference-detector (z2) distances in meters.
struct OpticalGeometry {
  double z1;
  double z2;

  /// Throws InvalidArgument unless both distances are positive and finite.
  void validate() const;
};

}  // namespace ghostsim
