#include "ghostsim/coincidence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/random/normal_distribution.hpp>

#include "ghostsim/error.hpp"
#include "ghostsim/rng.hpp"

namespace ghostsim {

namespace {

constexpr double kSlack = 1e-12;

std::size_t bin_count(double window, double bin_width) {
  return static_cast<std::size_t>(std::ceil(window / bin_width * (1.0 - kSlack)));
}

// Parabola through (-1, ym), (0, y0), (1, yp) evaluated at its vertex when the
// vertex is a maximum within one bin, otherwise at offset u0.
double parabolic_peak(double ym, double y0, double yp, double u0) {
  const double curvature = ym - 2.0 * y0 + yp;
  if (curvature < 0.0) {
    const double u = 0.5 * (ym - yp) / curvature;
    if (std::abs(u) <= 1.0) return y0 - 0.25 * (ym - yp) * u;
  }
  return y0 + 0.5 * (yp - ym) * u0 + 0.5 * curvature * u0 * u0;
}

// Sequential bit stream over CounterRng, for the ziggurat normal sampler.
class CounterEngine {
 public:
  using result_type = std::uint64_t;
  CounterEngine(std::uint64_t seed, std::uint64_t stream) : rng_(seed, stream) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return rng_.bits(counter_++); }

 private:
  CounterRng rng_;
  std::uint64_t counter_ = 0;
};

}  // namespace

void DetectorSpec::validate() const {
  if (!(mean_rate > 0.0) || !std::isfinite(mean_rate)) {
    throw InvalidArgument("detector mean_rate must be positive");
  }
  if (!(jitter_sigma >= 0.0)) throw InvalidArgument("detector jitter must be non-negative");
  if (!(dead_time >= 0.0)) throw InvalidArgument("detector dead time must be non-negative");
}

void CoincidenceHistogram::accumulate(const CoincidenceHistogram& other) {
  if (other.bin_width != bin_width || other.bin_centers != bin_centers) {
    throw ShapeError("histograms have different binning");
  }
  for (std::size_t k = 0; k < counts.size(); ++k) counts[k] += other.counts[k];
  total_starts += other.total_starts;
  total_stops += other.total_stops;
}

std::vector<double> simulate_intensity_trace(double tau0, double duration, double dt,
                                             std::uint64_t seed) {
  if (!(tau0 > 0.0) || !(dt > 0.0)) throw InvalidArgument("tau0 and dt must be positive");
  if (dt > tau0 / 10.0 * (1.0 + kSlack)) {
    throw InvalidArgument("trace step must be at most tau0 / 10");
  }
  if (duration < 100.0 * tau0 * (1.0 - kSlack)) {
    throw InvalidArgument("trace must last at least 100 tau0");
  }
  const auto n = static_cast<std::size_t>(std::llround(duration / dt));
  const double rho = std::exp(-dt / tau0);
  const double kick = std::sqrt(-std::expm1(-2.0 * dt / tau0));

  CounterEngine engine(seed, 2);
  boost::random::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  std::vector<double> trace(n);
  double re = normal(engine);
  double im = normal(engine);
  for (std::size_t k = 0; k < n; ++k) {
    trace[k] = re * re + im * im;
    re = rho * re + kick * normal(engine);
    im = rho * im + kick * normal(engine);
  }
  return trace;
}

std::vector<double> thin_photons(std::span<const double> trace, double dt, const DetectorSpec& det,
                                 std::uint64_t seed, double t_offset) {
  det.validate();
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (!(det.mean_rate * dt < 0.1)) {
    std::ostringstream msg;
    msg << "mean_rate * dt = " << det.mean_rate * dt << " must be below 0.1";
    throw InvalidArgument(msg.str());
  }

  // Unit-rate exponential gaps walked along the cumulative rate.
  const CounterRng gaps(seed, 0);
  std::uint64_t counter = 0;
  std::vector<double> events;
  double need = gaps.exponential(counter++);
  for (std::size_t k = 0; k < trace.size(); ++k) {
    if (!(trace[k] >= 0.0) || !std::isfinite(trace[k])) {
      throw InvalidArgument("intensity trace must be finite and non-negative");
    }
    const double lambda = det.mean_rate * trace[k] * dt;
    double used = 0.0;
    while (need <= lambda - used) {
      used += need;
      events.push_back(t_offset + (static_cast<double>(k) + used / lambda) * dt);
      need = gaps.exponential(counter++);
    }
    need -= lambda - used;
  }

  if (det.jitter_sigma > 0.0) {
    CounterEngine engine(seed, 1);
    boost::random::normal_distribution<double> jitter(0.0, det.jitter_sigma);
    for (double& t : events) t += jitter(engine);
    std::sort(events.begin(), events.end());
  }

  if (det.dead_time > 0.0 && !events.empty()) {
    std::size_t kept = 1;
    double last = events[0];
    for (std::size_t i = 1; i < events.size(); ++i) {
      if (events[i] - last >= det.dead_time) {
        last = events[i];
        events[kept++] = events[i];
      }
    }
    events.resize(kept);
  }
  return events;
}

CoincidenceHistogram start_stop_histogram(std::span<const double> starts,
                                          std::span<const double> stops, double bin_width,
                                          double window, double delay) {
  if (!(bin_width > 0.0) || !(window > 0.0)) {
    throw InvalidArgument("bin width and window must be positive");
  }
  if (!(delay >= 0.0) || delay > window) throw InvalidArgument("delay must lie in [0, window]");
  if (!std::is_sorted(starts.begin(), starts.end()) ||
      !std::is_sorted(stops.begin(), stops.end())) {
    throw InvalidArgument("event lists must be sorted");
  }

  const std::size_t nb = bin_count(window, bin_width);
  CoincidenceHistogram h;
  h.bin_width = bin_width;
  h.bin_centers.resize(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    h.bin_centers[k] = (static_cast<double>(k) + 0.5) * bin_width - delay;
  }
  h.counts.assign(nb, 0);
  h.total_starts = static_cast<std::int64_t>(starts.size());
  h.total_stops = static_cast<std::int64_t>(stops.size());

  // The stop channel runs `delay` behind the start channel.
  std::size_t j = 0;
  for (double s : starts) {
    while (j < stops.size() && stops[j] + delay <= s) ++j;
    if (j == stops.size()) break;
    const double d = stops[j] + delay - s;
    if (d > window) continue;
    const auto k = std::min(nb - 1, static_cast<std::size_t>(d / bin_width));
    ++h.counts[k];
  }
  return h;
}

G2Estimate estimate_g2(const CoincidenceHistogram& h) {
  const std::size_t nb = h.counts.size();
  if (nb < 3 || h.bin_centers.size() != nb) {
    throw InvalidArgument("histogram needs at least 3 consistent bins");
  }
  double reach = 0.0;
  std::size_t k0 = 0;
  for (std::size_t k = 0; k < nb; ++k) {
    reach = std::max(reach, std::abs(h.bin_centers[k]));
    if (std::abs(h.bin_centers[k]) < std::abs(h.bin_centers[k0])) k0 = k;
  }

  G2Estimate est;
  auto fit = [&](double cutoff) {
    double sum = 0.0;
    double diff_sq = 0.0;
    std::size_t used = 0;
    std::size_t pairs = 0;
    for (std::size_t k = 0; k < nb; ++k) {
      if (std::abs(h.bin_centers[k]) < cutoff) continue;
      sum += static_cast<double>(h.counts[k]);
      ++used;
      if (k + 1 < nb && std::abs(h.bin_centers[k + 1]) >= cutoff) {
        const auto d = static_cast<double>(h.counts[k + 1] - h.counts[k]);
        diff_sq += d * d;
        ++pairs;
      }
    }
    if (used < 2 || pairs == 0) throw DegenerateStatistics("histogram has no baseline region");
    const double base = sum / static_cast<double>(used);
    if (!(base > 0.0)) throw DegenerateStatistics("baseline has zero counts");

    est.baseline = base;
    est.baseline_bins = used;
    // Bin-to-bin scatter: insensitive to the slow pile-up slope of a single-stop TAC.
    est.baseline_noise = std::sqrt(diff_sq / (2.0 * static_cast<double>(pairs))) / base;
    est.g2_curve.resize(nb);
    for (std::size_t k = 0; k < nb; ++k) {
      est.g2_curve[k] = static_cast<double>(h.counts[k]) / base;
    }

    const auto& g = est.g2_curve;
    const double ym = k0 > 0 ? g[k0 - 1] : g[k0];
    const double yp = k0 + 1 < nb ? g[k0 + 1] : g[k0];
    const double u0 = -h.bin_centers[k0] / h.bin_width;
    est.g2_zero = parabolic_peak(ym, g[k0], yp, u0);
    est.contrast = est.g2_zero - 1.0;

    // Poisson errors on the three fitted bins plus the baseline mean.
    const double y[3] = {ym, g[k0], yp};
    double var_zero = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double sigma = std::sqrt(std::max(y[i], 0.0) / base);
      const double step = std::max(sigma, 1e-9);
      double lo[3] = {y[0], y[1], y[2]};
      double hi[3] = {y[0], y[1], y[2]};
      lo[i] -= step;
      hi[i] += step;
      const double slope = (parabolic_peak(hi[0], hi[1], hi[2], u0) -
                            parabolic_peak(lo[0], lo[1], lo[2], u0)) / (2.0 * step);
      var_zero += slope * slope * sigma * sigma;
    }
    var_zero += est.g2_zero * est.g2_zero / (base * static_cast<double>(used));
    est.g2_zero_std_err = std::sqrt(var_zero);

    est.half_width = 0.0;
    est.tau0_estimate = 0.0;
    if (!(est.contrast > 0.0)) return;
    const double level = 1.0 + 0.5 * est.contrast;
    double edge[2] = {std::numeric_limits<double>::quiet_NaN(),
                      std::numeric_limits<double>::quiet_NaN()};
    for (int side = 0; side < 2; ++side) {
      const std::ptrdiff_t dir = side == 0 ? -1 : 1;
      auto prev = static_cast<std::ptrdiff_t>(k0);
      for (auto k = prev + dir; k >= 0 && k < static_cast<std::ptrdiff_t>(nb); k += dir) {
        if (g[k] <= level) {
          const double f = g[prev] > g[k] ? (g[prev] - level) / (g[prev] - g[k]) : 0.0;
          edge[side] = h.bin_centers[prev] + f * (h.bin_centers[k] - h.bin_centers[prev]);
          break;
        }
        prev = k;
      }
    }
    if (std::isfinite(edge[0]) && std::isfinite(edge[1])) {
      est.half_width = 0.5 * (edge[1] - edge[0]);
      est.tau0_estimate = 2.0 * est.half_width / std::numbers::ln2;
    }
  };

  fit(0.5 * reach);
  if (est.tau0_estimate > 0.0) {
    const double cutoff = 10.0 * est.tau0_estimate;
    std::size_t far = 0;
    for (double t : h.bin_centers) far += std::abs(t) > cutoff ? 1 : 0;
    if (far >= 8) fit(std::nextafter(cutoff, std::numeric_limits<double>::infinity()));
  }
  return est;
}

double estimate_coherence_time(const CoincidenceHistogram& h) {
  const G2Estimate est = estimate_g2(h);
  if (!(est.contrast > 5.0 * est.baseline_noise) || !(est.tau0_estimate > 0.0)) {
    std::ostringstream msg;
    msg << "no resolvable g2 peak: contrast " << est.contrast << " against baseline noise "
        << est.baseline_noise;
    throw NotMeasurable(msg.str());
  }
  return est.tau0_estimate;
}

void HbtConfig::validate() const {
  if (!(tau0 > 0.0)) throw InvalidArgument("tau0 must be positive");
  if (!(dt > 0.0) || dt > tau0 / 10.0 * (1.0 + kSlack)) {
    throw InvalidArgument("dt must be positive and at most tau0 / 10");
  }
  if (segment_duration < 100.0 * tau0 * (1.0 - kSlack)) {
    throw InvalidArgument("segment_duration must be at least 100 tau0");
  }
  if (segments < 1) throw InvalidArgument("segments must be at least 1");
  start.validate();
  stop.validate();
  if (!(bin_width > 0.0) || !(window > bin_width)) {
    throw InvalidArgument("need 0 < bin_width < window");
  }
  if (!(delay >= 0.0) || delay > window) throw InvalidArgument("delay must lie in [0, window]");
}

std::vector<CoincidenceHistogram> run_hbt_sweep(const HbtConfig& cfg, std::span<const double> jitters,
                                                Parallelism par) {
  cfg.validate();
  if (jitters.empty()) throw InvalidArgument("need at least one jitter value");
  for (double j : jitters) {
    if (!(j >= 0.0)) throw InvalidArgument("jitter must be non-negative");
  }
  const auto n = static_cast<std::size_t>(cfg.segments);
  const std::size_t m = jitters.size();
  std::vector<CoincidenceHistogram> parts(n * m);
  parallel_for_blocks(n, par, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t s = begin; s < end; ++s) {
      const std::uint64_t key = CounterRng::derive(cfg.seed, s);
      const auto trace =
          simulate_intensity_trace(cfg.tau0, cfg.segment_duration, cfg.dt, CounterRng::derive(key, 0));
      std::vector<double> other;
      if (!cfg.shared_trace) {
        other = simulate_intensity_trace(cfg.tau0, cfg.segment_duration, cfg.dt,
                                         CounterRng::derive(key, 1));
      }
      for (std::size_t j = 0; j < m; ++j) {
        DetectorSpec start = cfg.start;
        DetectorSpec stop = cfg.stop;
        start.jitter_sigma = jitters[j];
        stop.jitter_sigma = jitters[j];
        const auto starts = thin_photons(trace, cfg.dt, start, CounterRng::derive(key, 2));
        const auto stops =
            thin_photons(cfg.shared_trace ? trace : other, cfg.dt, stop, CounterRng::derive(key, 3));
        parts[s * m + j] = start_stop_histogram(starts, stops, cfg.bin_width, cfg.window, cfg.delay);
      }
    }
  });
  std::vector<CoincidenceHistogram> totals(parts.begin(), parts.begin() + static_cast<std::ptrdiff_t>(m));
  for (std::size_t s = 1; s < n; ++s) {
    for (std::size_t j = 0; j < m; ++j) totals[j].accumulate(parts[s * m + j]);
  }
  return totals;
}

CoincidenceHistogram run_hbt(const HbtConfig& cfg, Parallelism par) {
  if (cfg.start.jitter_sigma != cfg.stop.jitter_sigma) {
    throw InvalidArgument("start and stop detectors must share the same jitter");
  }
  const double jitter[] = {cfg.start.jitter_sigma};
  return std::move(run_hbt_sweep(cfg, jitter, par).front());
}

}  // namespace ghostsim
