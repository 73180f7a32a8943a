#include "ghostsim/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <variant>

#include "ghostsim/error.hpp"

namespace ghostsim {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRelTol = 1e-8;
constexpr double kSamplesPerPi = 8.0;
constexpr std::size_t kMinIntervals = 32;
constexpr std::size_t kMaxLevels = 24;
// Recurrence steps between exact re-evaluations of the phase factor.
constexpr std::size_t kAnchorEvery = 256;

// phase(x) = (A x + B) x + C
struct Chirp {
  double a;
  double b;
  double c;

  double phase(double x) const noexcept { return (a * x + b) * x + c; }
  double slope(double x) const noexcept { return 2.0 * a * x + b; }
};

Complex unit_phase(double phase) { return {std::cos(phase), std::sin(phase)}; }

// sum_{j < count} w(x_j) exp(i phase(x_j)),  x_j = start + j h.
// exp(i phase) advances by a second-order recurrence in four interleaved lanes,
// re-anchored exactly at the start of every block.
template <typename Weight>
Complex chirp_sum(const Chirp& chirp, double start, double h, std::size_t count, const Weight& weight) {
  constexpr std::size_t kLanes = 4;
  const double ah2 = chirp.a * h * h;
  const Complex ratio = unit_phase(2.0 * ah2);
  const Complex lane_ratio = unit_phase(2.0 * kLanes * kLanes * ah2);
  const Complex lane_shift = unit_phase(2.0 * kLanes * ah2);
  Complex total = 0.0;
  for (std::size_t j0 = 0; j0 < count; j0 += kAnchorEvery) {
    const std::size_t j1 = std::min(count, j0 + kAnchorEvery);
    const double x0 = start + static_cast<double>(j0) * h;

    Complex value[kLanes];
    Complex step[kLanes];
    Complex acc[kLanes];
    value[0] = unit_phase(chirp.phase(x0));
    step[0] = unit_phase(chirp.slope(x0) * kLanes * h + kLanes * kLanes * ah2);
    Complex single = unit_phase(chirp.slope(x0) * h + ah2);
    for (std::size_t r = 1; r < kLanes; ++r) {
      value[r] = value[r - 1] * single;
      single *= ratio;
      step[r] = step[r - 1] * lane_shift;
    }
    // Split real/imaginary lanes keep the loop in registers.
    double vr[kLanes], vi[kLanes], sr[kLanes], si[kLanes], ar[kLanes], ai[kLanes];
    for (std::size_t r = 0; r < kLanes; ++r) {
      vr[r] = value[r].real();
      vi[r] = value[r].imag();
      sr[r] = step[r].real();
      si[r] = step[r].imag();
      ar[r] = 0.0;
      ai[r] = 0.0;
    }
    const double qr = lane_ratio.real();
    const double qi = lane_ratio.imag();
    std::size_t j = j0;
    for (; j + kLanes <= j1; j += kLanes) {
      for (std::size_t r = 0; r < kLanes; ++r) {
        const double w = weight(start + static_cast<double>(j + r) * h);
        ar[r] += w * vr[r];
        ai[r] += w * vi[r];
        const double tr = vr[r] * sr[r] - vi[r] * si[r];
        vi[r] = vr[r] * si[r] + vi[r] * sr[r];
        vr[r] = tr;
        const double ur = sr[r] * qr - si[r] * qi;
        si[r] = sr[r] * qi + si[r] * qr;
        sr[r] = ur;
      }
    }
    for (std::size_t r = 0; r < kLanes; ++r) {
      value[r] = {vr[r], vi[r]};
      acc[r] = {ar[r], ai[r]};
    }
    for (std::size_t r = 0; j < j1; ++j, ++r) {
      acc[r] += weight(start + static_cast<double>(j) * h) * value[r];
    }
    total += (acc[0] + acc[1]) + (acc[2] + acc[3]);
  }
  return total;
}

// Romberg-accelerated trapezoid over [lo, hi] starting from n0 intervals.
template <typename Weight>
Complex romberg(const Chirp& chirp, double lo, double hi, std::size_t n0, double abs_tol,
                const Weight& weight) {
  std::size_t n = n0;
  double h = (hi - lo) / static_cast<double>(n);
  const Complex ends = 0.5 * (weight(lo) * unit_phase(chirp.phase(lo)) +
                              weight(hi) * unit_phase(chirp.phase(hi)));
  Complex trap = h * (chirp_sum(chirp, lo, h, n + 1, weight) - ends);

  std::vector<Complex> prev{trap};
  std::vector<Complex> row;
  for (std::size_t level = 1; level <= kMaxLevels; ++level) {
    const Complex mid = chirp_sum(chirp, lo + 0.5 * h, h, n, weight);
    trap = 0.5 * trap + 0.5 * h * mid;
    h *= 0.5;
    n *= 2;

    row.assign(level + 1, Complex{});
    row[0] = trap;
    double factor = 1.0;
    for (std::size_t j = 1; j <= level; ++j) {
      factor *= 4.0;
      row[j] = row[j - 1] + (row[j - 1] - prev[j - 1]) / (factor - 1.0);
    }
    const double change = std::abs(row[level] - prev[level - 1]);
    prev.swap(row);
    if (level >= 2 && change <= abs_tol) break;
  }
  return prev.back();
}

struct UnitWeight {
  double operator()(double) const noexcept { return 1.0; }
};

}  // namespace

Complex mutual_coherence_kernel(double x1, double x2, const SourceSpec& source,
                                const OpticalGeometry& geom) {
  geom.validate();
  const double lambda = source.wavelength();
  const double a1 = 1.0 / (lambda * geom.z1);
  const double a2 = 1.0 / (lambda * geom.z2);
  const Chirp chirp{kPi * (a1 - a2), -2.0 * kPi * (x1 * a1 - x2 * a2),
                    kPi * (x1 * x1 * a1 - x2 * x2 * a2)};

  const Support s = source.support();
  const double width = s.hi - s.lo;
  const double max_slope = std::max(std::abs(chirp.slope(s.lo)), std::abs(chirp.slope(s.hi)));
  // Romberg starts at half the resolution limit; the first halving meets
  // h * max|phase'| <= pi / 8; convergence is judged from the second halving on.
  auto n0 = static_cast<std::size_t>(std::ceil(0.5 * width * max_slope * kSamplesPerPi / kPi));
  n0 = std::max(n0, kMinIntervals);

  const double abs_tol = kRelTol * source.integral();
  const double norm = 1.0 / (lambda * std::sqrt(geom.z1 * geom.z2));

  Complex integral;
  if (std::holds_alternative<UniformProfile>(source.profile())) {
    integral = romberg(chirp, s.lo, s.hi, n0, abs_tol, UnitWeight{});
  } else if (const auto* sampled = std::get_if<SampledProfile>(&source.profile())) {
    // Keep every profile sample on a node so the interpolation kinks never fall
    // inside a panel.
    const auto segments = static_cast<std::size_t>(std::llround(width / sampled->grid.dx()));
    const std::size_t seg = std::max<std::size_t>(segments, 1);
    n0 = seg * ((n0 + seg - 1) / seg);
    integral = romberg(chirp, s.lo, s.hi, n0, abs_tol,
                       [&source](double x) { return source.intensity_at(x); });
  } else {
    integral = romberg(chirp, s.lo, s.hi, n0, abs_tol,
                       [&source](double x) { return source.intensity_at(x); });
  }
  return norm * integral;
}

double mean_arm_intensity(double x, const SourceSpec& source, double z) {
  return mutual_coherence_kernel(x, x, source, OpticalGeometry{z, z}).real();
}

}  // namespace ghostsim
