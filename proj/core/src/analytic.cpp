#include "ghostsim/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <variant>

#include "ghostsim/error.hpp"
#include "ghostsim/kernel.hpp"

namespace ghostsim {

void PointlikeObject::validate() const {
  if (feature_positions.empty()) throw InvalidArgument("point-like object needs at least one feature");
  if (feature_positions.size() != feature_weights.size()) {
    throw InvalidArgument("feature positions and weights differ in length");
  }
  bool any = false;
  for (double w : feature_weights) {
    if (!(w >= 0.0)) throw InvalidArgument("feature weights must be non-negative");
    any = any || w > 0.0;
  }
  if (!any) throw InvalidArgument("feature weights are all zero");
}

CorrelationProfile delta_g2_analytic(const TransmissionMask& mask, const SourceSpec& source,
                                     const OpticalGeometry& geom, const TransverseGrid& x2_grid,
                                     Parallelism par) {
  geom.validate();
  const double limit = source.wavelength() * geom.z1 / (4.0 * source.characteristic_half_width());
  if (!(mask.grid.dx() < limit)) {
    std::ostringstream msg;
    msg << "mask spacing " << mask.grid.dx() << " m does not resolve the coherence kernel (needs < "
        << limit << " m)";
    throw InvalidArgument(msg.str());
  }

  // Trapezoid weights |T|^2 dx over the mask grid; only transmitting samples contribute.
  const auto& g = mask.grid;
  std::vector<std::size_t> open;
  std::vector<double> weight;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double w = std::norm(mask.t[i]) * g.dx();
    if (i == 0 || i + 1 == g.size()) w *= 0.5;
    if (w > 0.0) {
      open.push_back(i);
      weight.push_back(w);
    }
  }
  if (open.empty()) throw DegenerateStatistics("mask transmits no light");

  double bucket_mean = 0.0;
  for (std::size_t j = 0; j < open.size(); ++j) {
    bucket_mean += weight[j] * mean_arm_intensity(g.x(open[j]), source, geom.z1);
  }

  CorrelationProfile profile;
  profile.x2 = x2_grid.coordinates();
  profile.delta_g2.assign(x2_grid.size(), 0.0);
  profile.std_err.assign(x2_grid.size(), 0.0);
  profile.n_realizations = 0;
  profile.normalization = Normalization::Fluctuation;
  profile.error_method = "none";

  parallel_for_blocks(x2_grid.size(), par, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t k = begin; k < end; ++k) {
      const double x2 = x2_grid.x(k);
      double numerator = 0.0;
      for (std::size_t j = 0; j < open.size(); ++j) {
        numerator += weight[j] * std::norm(mutual_coherence_kernel(g.x(open[j]), x2, source, geom));
      }
      const double reference_mean = mean_arm_intensity(x2, source, geom.z2);
      profile.delta_g2[k] = numerator / (bucket_mean * reference_mean);
    }
  });
  return profile;
}

CorrelationProfile delta_g2_analytic(const TransmissionMask& mask, const SourceSpec& source,
                                     const OpticalGeometry& geom, const TransverseGrid& x2_grid,
                                     double detector_aperture, Parallelism par) {
  if (!(detector_aperture >= 0.0)) throw InvalidArgument("detector aperture must be non-negative");
  if (detector_aperture == 0.0) return delta_g2_analytic(mask, source, geom, x2_grid, par);

  // The mean reference intensity of a delta-correlated source does not depend on x2,
  // so averaging delta_g2 equals averaging the covariance.
  const double half = 0.5 * detector_aperture;
  const auto steps = static_cast<std::int64_t>(
      std::ceil(detector_aperture / (coherence_width(source, geom.z2) / 8.0)));
  const auto m = std::max<std::int64_t>(2, steps);
  const double h = detector_aperture / static_cast<double>(m);
  const TransverseGrid fine(x2_grid.x_min() - half, x2_grid.x_max() + half,
                            static_cast<std::int64_t>(std::llround((x2_grid.span() + detector_aperture) / h)) + 1);
  CorrelationProfile dense = delta_g2_analytic(mask, source, geom, fine, par);

  CorrelationProfile profile;
  profile.x2 = x2_grid.coordinates();
  profile.delta_g2.resize(x2_grid.size());
  profile.std_err.assign(x2_grid.size(), 0.0);
  profile.normalization = Normalization::Fluctuation;
  profile.error_method = "none";
  const auto& y = dense.delta_g2;
  for (std::size_t k = 0; k < x2_grid.size(); ++k) {
    const double x0 = x2_grid.x(k) - half;
    double acc = 0.0;
    for (std::int64_t j = 0; j <= m; ++j) {
      const double x = x0 + static_cast<double>(j) * h;
      const double w = (j == 0 || j == m) ? 0.5 : 1.0;
      const double u = std::max(0.0, (x - fine.x_min()) / fine.dx());
      const auto i = std::min(fine.size() - 2, static_cast<std::size_t>(u));
      const double f = u - static_cast<double>(i);
      acc += w * (y[i] + f * (y[i + 1] - y[i]));
    }
    profile.delta_g2[k] = acc / static_cast<double>(m);
  }
  return profile;
}

double g2_pointlike(const PointlikeObject& obj, double x2, double kernel_width) {
  obj.validate();
  if (!(kernel_width > 0.0)) throw InvalidArgument("kernel width must be positive");
  double value = static_cast<double>(obj.count());
  for (std::size_t j = 0; j < obj.count(); ++j) {
    const double u = (x2 - obj.feature_positions[j]) / kernel_width;
    value += obj.feature_weights[j] * std::exp(-0.5 * u * u);
  }
  return value;
}

double pointlike_visibility(const PointlikeObject& obj, double kernel_width) {
  obj.validate();
  double peak = 0.0;
  double reach = 0.0;
  for (double p : obj.feature_positions) {
    peak = std::max(peak, g2_pointlike(obj, p, kernel_width));
    reach = std::max(reach, std::abs(p));
  }
  const double far = g2_pointlike(obj, 2.0 * reach + 1e3 * kernel_width + 1.0, kernel_width);
  return (peak - far) / (peak + far);
}

double predicted_speckle_size(const SourceSpec& source, double z) {
  const auto* uniform = std::get_if<UniformProfile>(&source.profile());
  if (uniform == nullptr) {
    throw UnsupportedProfile(
        "speckle size closed form needs a uniform source; evaluate the kernel numerically");
  }
  if (!(z > 0.0)) throw InvalidArgument("distance must be positive");
  return source.wavelength() * z / (2.0 * uniform->half_width);
}

double coherence_width(const SourceSpec& source, double z) noexcept {
  return source.wavelength() * z / (2.0 * source.characteristic_half_width());
}

}  // namespace ghostsim
