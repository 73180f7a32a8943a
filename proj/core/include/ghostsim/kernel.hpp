#pragma once

#include "ghostsim/field.hpp"
#include "ghostsim/source.hpp"

namespace ghostsim {

/// Mutual-coherence kernel of the two arms,
///
///   K(x1, x2) = integral of I_s(x') h2*(x', x2) h1(x', x1) dx'
///             = 1 / (lambda sqrt(z1 z2)) * integral of I_s(x')
///               exp(i pi [(x' - x1)^2 / (lambda z1) - (x' - x2)^2 / (lambda z2)]) dx'
///
/// with the unitary Fresnel impulse responses (the object transmission is applied
/// by the caller). Evaluated by trapezoid quadrature over the source support with
/// at least 8 samples per pi of phase, halving the step (with Richardson
/// extrapolation) until successive estimates agree to 1e-8 of the kernel bound
/// integral(I_s) / (lambda sqrt(z1 z2)).
///
/// For a uniform source of half-width a and z1 = z2 = z this reduces to
/// (2a / lambda z) sinc(2a (x2 - x1) / (lambda z)) times a unit phase.
Complex mutual_coherence_kernel(double x1, double x2, const SourceSpec& source,
                                const OpticalGeometry& geom);

/// Mean intensity <I(x)> = K(x, x) for a single arm of length z.
double mean_arm_intensity(double x, const SourceSpec& source, double z);

}  // namespace ghostsim
