#pragma once

#include <complex>
#include <vector>

#include "ghostsim/grid.hpp"

namespace ghostsim {

using Complex = std::complex<double>;

/// Complex scalar field sampled on a transverse grid.
struct ComplexField {
  TransverseGrid grid;
  std::vector<Complex> amplitude;

  /// Zero field on `grid`.
  explicit ComplexField(TransverseGrid grid);

  /// Throws ShapeError if `amplitude.size() != grid.size()`.
  ComplexField(TransverseGrid grid, std::vector<Complex> amplitude);

  /// Sum of |a_i|^2 dx.
  double total_power() const noexcept;

  std::vector<double> intensity() const;
};

}  // namespace ghostsim
