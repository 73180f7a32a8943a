#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ghostsim/parallel.hpp"

namespace ghostsim {

struct DetectorSpec {
  double mean_rate = 1.0;     ///< counts per second at unit intensity
  double jitter_sigma = 0.0;  ///< Gaussian timing jitter, seconds
  double dead_time = 0.0;     ///< seconds

  void validate() const;
};

/// Start-stop time-difference histogram as produced by a TAC/MCA chain.
struct CoincidenceHistogram {
  double bin_width = 0.0;
  std::vector<double> bin_centers;    ///< t_stop - t_start - delay, seconds
  std::vector<std::int64_t> counts;
  std::int64_t total_starts = 0;
  std::int64_t total_stops = 0;

  /// Adds another histogram with identical binning (throws ShapeError otherwise).
  void accumulate(const CoincidenceHistogram& other);
};

/// Thermal intensity I(t) = |E(t)|^2 where E is a unit-power complex
/// Ornstein-Uhlenbeck process with <E(t) E*(t + s)> = exp(-|s| / tau0).
/// Requires dt <= tau0 / 10 and duration >= 100 tau0.
std::vector<double> simulate_intensity_trace(double tau0, double duration, double dt,
                                             std::uint64_t seed);

/// Photon detection times: inhomogeneous Poisson process of rate mean_rate * I(t)
/// (piecewise constant over each dt bin), Gaussian jitter, then non-paralyzable
/// dead time. Sorted. `t_offset` is the time of the first trace sample.
/// Requires mean_rate * dt < 0.1.
std::vector<double> thin_photons(std::span<const double> trace, double dt, const DetectorSpec& det,
                                 std::uint64_t seed, double t_offset = 0.0);

/// Single-stop TAC emulation: each start is paired with the first stop strictly
/// after it, counted if t_stop - t_start <= window. Stops are delayed by `delay`
/// (cable delay) before pairing, so zero lag can sit mid-histogram. Bins are
/// [k w, (k+1) w) in t_stop + delay - t_start; bin centers report the true lag
/// t_stop - t_start.
CoincidenceHistogram start_stop_histogram(std::span<const double> starts,
                                          std::span<const double> stops, double bin_width,
                                          double window, double delay = 0.0);

struct G2Estimate {
  std::vector<double> g2_curve;   ///< counts / baseline
  double g2_zero = 0.0;           ///< parabolic peak near zero lag
  double g2_zero_std_err = 0.0;   ///< Poisson error propagated through the fit
  double contrast = 0.0;          ///< g2_zero - 1
  double baseline = 0.0;          ///< mean counts per baseline bin
  double baseline_noise = 0.0;    ///< per-bin scatter of g2_curve over baseline bins
                                  ///< (from successive differences)
  std::size_t baseline_bins = 0;
  double half_width = 0.0;        ///< half-width at half-contrast of the excess, seconds
  double tau0_estimate = 0.0;     ///< 2 half_width / ln 2 (exponential field correlation)
};

/// Normalizes by the far-tail baseline and fits the zero-lag peak.
G2Estimate estimate_g2(const CoincidenceHistogram& h);

/// Coherence time from the half-width at half-contrast, assuming
/// g2(t) = 1 + exp(-2|t| / tau0). Throws NotMeasurable when the contrast does not
/// exceed 5 times the per-bin baseline noise.
double estimate_coherence_time(const CoincidenceHistogram& h);

/// Whole HBT measurement: the trace is generated in independent segments, each
/// thinned by the start and stop detectors and histogrammed; segment histograms
/// are summed in segment order.
struct HbtConfig {
  double tau0 = 0.1e-9;
  double dt = 0.01e-9;
  double segment_duration = 20e-6;
  std::int64_t segments = 1;
  DetectorSpec start;
  DetectorSpec stop;
  double bin_width = 0.01e-9;
  double window = 20e-9;
  /// Stop-channel delay; zero lag lands at the center of a bin when
  /// delay = (k + 1/2) bin_width.
  double delay = 10.005e-9;
  /// True: both detectors see the same intensity trace (HBT). False: independent traces.
  bool shared_trace = true;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Requires equal start and stop jitter.
CoincidenceHistogram run_hbt(const HbtConfig& cfg, Parallelism par = {});

/// One histogram per jitter value (applied to both detectors). Every jitter value
/// sees the same intensity trace and the same photon draws before jitter, so the
/// results differ only through the timing jitter.
std::vector<CoincidenceHistogram> run_hbt_sweep(const HbtConfig& cfg, std::span<const double> jitters,
                                                Parallelism par = {});

}  // namespace ghostsim
