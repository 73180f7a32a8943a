#pragma once

#include <vector>

#include "ghostsim/field.hpp"
#include "ghostsim/grid.hpp"

namespace ghostsim {

/// A transparent window of a mask; kept alongside the samples so metrics can
/// locate the expected image features.
struct MaskFeature {
  double center;
  double width;
};

/// Sampled complex transmission T(x), |T| <= 1.
struct TransmissionMask {
  TransverseGrid grid;
  std::vector<Complex> t;
  std::vector<MaskFeature> features;

  /// Throws ShapeError on length mismatch and InvalidArgument if any |t| > 1 + 1e-12.
  TransmissionMask(TransverseGrid grid, std::vector<Complex> t,
                   std::vector<MaskFeature> features = {});

  static TransmissionMask uniform(const TransverseGrid& grid);
  static TransmissionMask opaque(const TransverseGrid& grid);

  /// Two slits of equal `width` whose centers are `center_separation` apart.
  static TransmissionMask double_slit(const TransverseGrid& grid, double width,
                                      double center_separation, double center = 0.0);

  /// 1D cross-section of two pinholes: top-hats of widths d1 (left) and d2 (right),
  /// `separation` apart center to center.
  static TransmissionMask pinhole_pair(const TransverseGrid& grid, double d1, double d2,
                                       double separation, double center = 0.0);

  /// Sum of |T|^2 dx.
  double transmitted_area() const noexcept;
};

/// Pointwise product; throws ShapeError unless the grids are identical.
ComplexField apply_mask(const ComplexField& field, const TransmissionMask& mask);

}  // namespace ghostsim
