#include "ghostsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ghostsim/error.hpp"

namespace ghostsim {

namespace {

void check_lengths(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ShapeError("x and y differ in length");
  if (x.empty()) throw InvalidArgument("empty profile");
}

double crossing(std::span<const double> x, std::span<const double> y, std::size_t inside,
                std::size_t outside, double level) {
  const double f = (y[inside] - level) / (y[inside] - y[outside]);
  return x[inside] + f * (x[outside] - x[inside]);
}

}  // namespace

double median(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("median of an empty set");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

double profile_baseline(std::span<const double> x, std::span<const double> y,
                        std::span<const MaskFeature> features, double blur_width) {
  check_lengths(x, y);
  std::vector<double> outside;
  for (std::size_t i = 0; i < x.size(); ++i) {
    bool near = false;
    for (const auto& f : features) {
      const double reach = 0.5 * f.width + 2.0 * blur_width;
      near = near || std::abs(x[i] - f.center) <= reach;
    }
    if (!near) outside.push_back(y[i]);
  }
  if (outside.empty()) return *std::min_element(y.begin(), y.end());
  return median(std::move(outside));
}

std::vector<Peak> find_peaks(std::span<const double> x, std::span<const double> y, double baseline) {
  check_lengths(x, y);
  const double top = *std::max_element(y.begin(), y.end());
  std::vector<Peak> peaks;
  if (!(top > baseline)) return peaks;
  const double half = baseline + 0.5 * (top - baseline);
  const std::size_t n = y.size();

  std::size_t i = 0;
  while (i < n) {
    if (!(y[i] > half)) {
      ++i;
      continue;
    }
    std::size_t best = i;
    std::size_t j = i;
    for (; j < n && y[j] > half; ++j) {
      if (y[j] > y[best]) best = j;
    }
    i = j;

    Peak p;
    p.height = y[best];
    const double level = baseline + 0.5 * (p.height - baseline);
    std::size_t k = best;
    while (k > 0 && y[k - 1] > level) --k;
    p.left = k > 0 ? crossing(x, y, k, k - 1, level) : x[0];
    k = best;
    while (k + 1 < n && y[k + 1] > level) ++k;
    p.right = k + 1 < n ? crossing(x, y, k, k + 1, level) : x[n - 1];
    p.fwhm = p.right - p.left;
    p.position = 0.5 * (p.left + p.right);
    peaks.push_back(p);
  }

  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const Peak& a, const Peak& b) { return a.height > b.height; });
  std::vector<Peak> kept;
  for (const auto& p : peaks) {
    const bool overlaps = std::any_of(kept.begin(), kept.end(), [&](const Peak& q) {
      return p.left < q.right && q.left < p.right;
    });
    if (!overlaps) kept.push_back(p);
  }
  return kept;
}

double visibility(std::span<const double> x, std::span<const double> raw_g2,
                  std::span<const MaskFeature> features, double blur_width) {
  const double base = profile_baseline(x, raw_g2, features, blur_width);
  const double top = *std::max_element(raw_g2.begin(), raw_g2.end());
  return (top - base) / (top + base);
}

double second_moment(std::span<const double> x, std::span<const double> y) {
  check_lengths(x, y);
  double w = 0.0;
  double wx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = std::max(y[i], 0.0);
    w += v;
    wx += v * x[i];
  }
  if (!(w > 0.0)) return 0.0;
  const double mean = wx / w;
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - mean;
    acc += std::max(y[i], 0.0) * d * d;
  }
  return acc / w;
}

double interpolate(std::span<const double> x, std::span<const double> y, double at) {
  check_lengths(x, y);
  if (at <= x.front()) return y.front();
  if (at >= x.back()) return y.back();
  const auto hi = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), at) - x.begin());
  const std::size_t lo = hi - 1;
  const double f = (at - x[lo]) / (x[hi] - x[lo]);
  return y[lo] + f * (y[hi] - y[lo]);
}

double peak_to_midpoint_ratio(std::span<const double> x, std::span<const double> y,
                              const Peak& a, const Peak& b) {
  const double mid = interpolate(x, y, 0.5 * (a.position + b.position));
  if (!(mid > 0.0)) return std::numeric_limits<double>::infinity();
  return std::min(a.height, b.height) / mid;
}

MetricsReport compute_metrics(const CorrelationProfile& profile,
                              std::span<const MaskFeature> features, double blur_width,
                              std::string method) {
  const auto& x = profile.x2;
  check_lengths(x, profile.delta_g2);
  const std::vector<double> raw = to_raw_g2(profile).delta_g2;

  MetricsReport r;
  r.method = std::move(method);
  r.features.assign(features.begin(), features.end());
  r.blur_width = blur_width;
  r.baseline = profile_baseline(x, raw, features, blur_width);
  r.visibility = visibility(x, raw, features, blur_width);
  r.max_delta_g2 = *std::max_element(profile.delta_g2.begin(), profile.delta_g2.end());
  r.second_moment = second_moment(x, profile.delta_g2);

  const auto peaks = find_peaks(x, profile.delta_g2, r.baseline - 1.0);
  for (const auto& p : peaks) {
    r.peak_positions.push_back(p.position);
    r.fwhm_per_peak.push_back(p.fwhm);
  }
  r.peak_separation = std::numeric_limits<double>::quiet_NaN();
  r.peak_to_midpoint = std::numeric_limits<double>::quiet_NaN();
  if (peaks.size() >= 2) {
    r.peak_separation = std::abs(peaks[0].position - peaks[1].position);
    r.peak_to_midpoint = peak_to_midpoint_ratio(x, profile.delta_g2, peaks[0], peaks[1]);
  }
  return r;
}

}  // namespace ghostsim
