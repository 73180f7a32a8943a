#pragma once

#include <vector>

#include "ghostsim/ensemble.hpp"
#include "ghostsim/mask.hpp"
#include "ghostsim/parallel.hpp"
#include "ghostsim/source.hpp"

namespace ghostsim {

/// Object of N point-like transparent features with weights |T|^2.
struct PointlikeObject {
  std::vector<double> feature_positions;
  std::vector<double> feature_weights;

  /// Throws InvalidArgument on empty or mismatched arrays, negative weights, or all-zero weights.
  void validate() const;
  std::size_t count() const noexcept { return feature_positions.size(); }
};

/// Deterministic delta_g2 by quadrature of the coherence kernel:
///
///   delta_g2(x2) = int |T(x1)|^2 |K(x1, x2)|^2 dx1 / ( int |T(x1)|^2 <I1(x1)> dx1 * <I2(x2)> )
///
/// Trapezoid rule over the mask grid. Requires mask dx < lambda z1 / (4 a).
CorrelationProfile delta_g2_analytic(const TransmissionMask& mask, const SourceSpec& source,
                                     const OpticalGeometry& geom, const TransverseGrid& x2_grid,
                                     Parallelism par = {});

/// Same, with each reference sample averaged over a box of width `detector_aperture`
/// centered on it (trapezoid rule, at least 8 points per coherence width).
CorrelationProfile delta_g2_analytic(const TransmissionMask& mask, const SourceSpec& source,
                                     const OpticalGeometry& geom, const TransverseGrid& x2_grid,
                                     double detector_aperture, Parallelism par = {});

/// N + sum_j w_j exp(-(x2 - p_j)^2 / (2 kernel_width^2)); the kernel-blurred form of
/// g2(x2) ~ N + |T(x2)|^2 for point-like features.
double g2_pointlike(const PointlikeObject& obj, double x2, double kernel_width);

/// Visibility of g2_pointlike: peak over the feature centers against the far-field value N.
double pointlike_visibility(const PointlikeObject& obj, double kernel_width);

/// lambda z / (2 a): first zero of the uniform-source coherence kernel.
/// Throws UnsupportedProfile for non-uniform profiles.
double predicted_speckle_size(const SourceSpec& source, double z);

/// Coherence width estimate for any profile: lambda z / (2 characteristic half-width).
double coherence_width(const SourceSpec& source, double z) noexcept;

}  // namespace ghostsim
