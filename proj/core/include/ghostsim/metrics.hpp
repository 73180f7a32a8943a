#pragma once

#include <span>
#include <string>
#include <vector>

#include "ghostsim/ensemble.hpp"
#include "ghostsim/mask.hpp"

namespace ghostsim {

struct Peak {
  double position = 0.0;  ///< midpoint of the half-maximum crossings
  double height = 0.0;    ///< largest sample in the peak
  double fwhm = 0.0;
  double left = 0.0;      ///< interpolated half-maximum crossings
  double right = 0.0;
};

double median(std::vector<double> values);

/// Median of `y` over samples outside every [feature edge - 2 blur, feature edge + 2 blur]
/// neighborhood. Falls back to the minimum of `y` when no sample is outside.
double profile_baseline(std::span<const double> x, std::span<const double> y,
                        std::span<const MaskFeature> features, double blur_width);

/// Peaks above the half level baseline + (max - baseline) / 2, ordered by height
/// (largest first). Each peak's FWHM is measured against its own height by linear
/// interpolation of the half-maximum crossings.
std::vector<Peak> find_peaks(std::span<const double> x, std::span<const double> y, double baseline);

/// (max - baseline) / (max + baseline) on a raw g2 profile.
double visibility(std::span<const double> x, std::span<const double> raw_g2,
                  std::span<const MaskFeature> features, double blur_width);

/// Variance of x under the weight max(y, 0).
double second_moment(std::span<const double> x, std::span<const double> y);

/// Smaller of the two largest peak heights over the profile value (linearly
/// interpolated) midway between them; +infinity when that value is <= 0.
double peak_to_midpoint_ratio(std::span<const double> x, std::span<const double> y,
                              const Peak& a, const Peak& b);

/// Linear interpolation of a sampled curve at `at` (clamped to the ends).
double interpolate(std::span<const double> x, std::span<const double> y, double at);

struct MetricsReport {
  std::string method;
  double visibility = 0.0;               ///< on raw g2 = 1 + delta_g2
  double baseline = 0.0;                 ///< raw g2 baseline used for the visibility
  std::vector<double> peak_positions;    ///< largest first
  double peak_separation = 0.0;          ///< NaN with fewer than two peaks
  std::vector<double> fwhm_per_peak;
  double peak_to_midpoint = 0.0;         ///< NaN with fewer than two peaks
  double second_moment = 0.0;
  double max_delta_g2 = 0.0;
  std::vector<MaskFeature> features;
  double blur_width = 0.0;               ///< neighborhood scale used for the baseline
  double runtime_seconds = 0.0;
};

/// Metrics of a fluctuation profile.
MetricsReport compute_metrics(const CorrelationProfile& profile,
                              std::span<const MaskFeature> features, double blur_width,
                              std::string method);

}  // namespace ghostsim
