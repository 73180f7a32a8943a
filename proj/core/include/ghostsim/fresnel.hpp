#pragma once

#include <memory>
#include <span>
#include <vector>

#include "ghostsim/field.hpp"
#include "ghostsim/grid.hpp"

namespace ghostsim {

enum class PropagationMethod {
  Direct,     ///< O(N M) quadrature; the reference.
  Fast,       ///< Chirp-factored transform evaluated with FFT convolution.
  Automatic,  ///< Fast above a small size threshold.
};

/// Throws AliasingError when in.dx > lambda z / (2 span), span being the extent of
/// the union of the input and output windows.
void check_fresnel_sampling(const TransverseGrid& in, const TransverseGrid& out, double distance,
                            double wavelength);

/// Largest input spacing that passes check_fresnel_sampling.
double max_fresnel_spacing(double span, double distance, double wavelength) noexcept;

/// Unitary 1D Fresnel transform:
///   out(y) = e^{-i pi/4} / sqrt(lambda z) * sum_x exp(i pi (x - y)^2 / (lambda z)) in(x) dx.
ComplexField fresnel_propagate(const ComplexField& field, double distance, double wavelength,
                               const TransverseGrid& out_grid,
                               PropagationMethod method = PropagationMethod::Automatic);

/// Fresnel transform between two fixed grids with the chirp factors and the
/// transformed convolution kernel precomputed. Immutable once built; `apply`
/// may be called concurrently as long as each caller passes its own Workspace.
class FresnelPropagator {
 public:
  /// Scratch space for one concurrent caller.
  struct Workspace {
    std::vector<Complex> buffer;
  };

  /// Validates the distance, wavelength and sampling criterion.
  FresnelPropagator(const TransverseGrid& in_grid, const TransverseGrid& out_grid,
                    double distance, double wavelength);
  ~FresnelPropagator();
  FresnelPropagator(FresnelPropagator&&) noexcept;
  FresnelPropagator& operator=(FresnelPropagator&&) noexcept;

  const TransverseGrid& in_grid() const noexcept;
  const TransverseGrid& out_grid() const noexcept;

  Workspace make_workspace() const;

  void apply(std::span<const Complex> in, std::span<Complex> out, Workspace& ws) const;

  ComplexField operator()(const ComplexField& field) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ghostsim
