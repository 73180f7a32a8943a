#include "ghostsim/source.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ghostsim/error.hpp"

namespace ghostsim {
namespace {

constexpr double kGaussianTruncation = 4.0;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

SourceSpec::SourceSpec(double wavelength, SourceProfile profile, double coherence_time)
    : wavelength_(wavelength), profile_(std::move(profile)), coherence_time_(coherence_time) {
  if (!(wavelength > 0.0) || !std::isfinite(wavelength)) {
    throw InvalidArgument("wavelength must be positive");
  }
  if (!(coherence_time > 0.0) || !std::isfinite(coherence_time)) {
    throw InvalidArgument("coherence_time must be positive");
  }
  std::visit(overloaded{
                 [](const UniformProfile& p) {
                   if (!(p.half_width > 0.0) || !std::isfinite(p.half_width)) {
                     throw InvalidArgument("uniform source half-width must be positive");
                   }
                 },
                 [](const GaussianProfile& p) {
                   if (!(p.half_width > 0.0) || !std::isfinite(p.half_width)) {
                     throw InvalidArgument("gaussian source half-width must be positive");
                   }
                 },
                 [](const SampledProfile& p) {
                   if (p.intensity.size() != p.grid.size()) {
                     throw ShapeError("sampled profile length does not match its grid");
                   }
                   double sum = 0.0;
                   for (double v : p.intensity) {
                     if (!(v >= 0.0) || !std::isfinite(v)) {
                       throw InvalidArgument("source profile must be finite and non-negative");
                     }
                     sum += v;
                   }
                   if (!(sum > 0.0)) throw InvalidArgument("source profile has zero integral");
                 },
             },
             profile_);
}

double SourceSpec::intensity_at(double x) const noexcept {
  return std::visit(overloaded{
                        [x](const UniformProfile& p) {
                          return std::abs(x) <= p.half_width ? 1.0 : 0.0;
                        },
                        [x](const GaussianProfile& p) {
                          if (std::abs(x) > kGaussianTruncation * p.half_width) return 0.0;
                          const double u = x / p.half_width;
                          return std::exp(-2.0 * u * u);
                        },
                        [x](const SampledProfile& p) {
                          const auto& g = p.grid;
                          if (x < g.x_min() || x > g.x_max()) return 0.0;
                          const double u = (x - g.x_min()) / g.dx();
                          auto i = static_cast<std::size_t>(u);
                          if (i >= g.size() - 1) return p.intensity.back();
                          const double f = u - static_cast<double>(i);
                          return (1.0 - f) * p.intensity[i] + f * p.intensity[i + 1];
                        },
                    },
                    profile_);
}

Support SourceSpec::support() const noexcept {
  return std::visit(overloaded{
                        [](const UniformProfile& p) { return Support{-p.half_width, p.half_width}; },
                        [](const GaussianProfile& p) {
                          return Support{-kGaussianTruncation * p.half_width,
                                         kGaussianTruncation * p.half_width};
                        },
                        [](const SampledProfile& p) {
                          std::size_t first = 0;
                          std::size_t last = p.intensity.size() - 1;
                          while (first < last && p.intensity[first] == 0.0) ++first;
                          while (last > first && p.intensity[last] == 0.0) --last;
                          // Linear interpolation reaches into the neighbouring cells.
                          const std::size_t lo = first > 0 ? first - 1 : 0;
                          const std::size_t hi = std::min(last + 1, p.intensity.size() - 1);
                          return Support{p.grid.x(lo), p.grid.x(hi)};
                        },
                    },
                    profile_);
}

double SourceSpec::characteristic_half_width() const noexcept {
  return std::visit(overloaded{
                        [](const UniformProfile& p) { return p.half_width; },
                        [](const GaussianProfile& p) { return p.half_width; },
                        [this](const SampledProfile& p) {
                          const Support s = support();
                          return std::max(0.5 * (s.hi - s.lo), 0.5 * p.grid.dx());
                        },
                    },
                    profile_);
}

double SourceSpec::integral() const noexcept {
  return std::visit(overloaded{
                        [](const UniformProfile& p) { return 2.0 * p.half_width; },
                        [](const GaussianProfile& p) {
                          return p.half_width * std::sqrt(std::numbers::pi / 2.0);
                        },
                        [](const SampledProfile& p) {
                          double sum = 0.0;
                          for (std::size_t i = 0; i + 1 < p.intensity.size(); ++i) {
                            sum += 0.5 * (p.intensity[i] + p.intensity[i + 1]);
                          }
                          return sum * p.grid.dx();
                        },
                    },
                    profile_);
}

void OpticalGeometry::validate() const {
  if (!(z1 > 0.0) || !std::isfinite(z1) || !(z2 > 0.0) || !std::isfinite(z2)) {
    throw InvalidArgument("arm distances z1 and z2 must be positive");
  }
}

}  // namespace ghostsim
