#include "ghostsim/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "ghostsim/analytic.hpp"
#include "ghostsim/error.hpp"

namespace ghostsim {

namespace {

CorrelationProfile difference(const CorrelationProfile& mc, const CorrelationProfile& analytic) {
  CorrelationProfile d = mc;
  for (std::size_t i = 0; i < d.size(); ++i) d.delta_g2[i] -= analytic.delta_g2[i];
  return d;
}

std::size_t nearest(const std::vector<double>& values, double target) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (std::abs(values[i] - target) < std::abs(values[best] - target)) best = i;
  }
  return best;
}

CorrelationProfile optical_profile(const ScenarioConfig& cfg, const TransmissionMask& mask,
                                   const SourceSpec& source, const OpticalGeometry& geom,
                                   bool montecarlo, Parallelism par) {
  if (montecarlo) return delta_g2_montecarlo(mask, source, geom, cfg.ensemble(), par);
  return delta_g2_analytic(mask, source, geom, cfg.detector_grid.grid(), cfg.detector_aperture, par);
}

void run_optical(const ScenarioConfig& cfg, RunOutput& out, Parallelism par) {
  const SourceSpec source = cfg.source();
  const TransmissionMask mask = cfg.make_mask();
  const bool want_mc = cfg.method != Method::Analytic;
  const bool want_analytic = cfg.method != Method::MonteCarlo;

  std::optional<CorrelationProfile> mc;
  std::optional<CorrelationProfile> analytic;

  if (cfg.kind == ScenarioKind::Z2Sweep) {
    SweepResult sweep;
    sweep.z2 = cfg.sweep->values();
    const bool sweep_mc = !want_analytic;
    for (double z2 : sweep.z2) {
      const OpticalGeometry geom{cfg.geometry.z1, z2};
      sweep.rows.push_back(optical_profile(cfg, mask, source, geom, sweep_mc, par));
      const auto& row = sweep.rows.back();
      sweep.row_max.push_back(*std::max_element(row.delta_g2.begin(), row.delta_g2.end()));
      sweep.row_second_moment.push_back(second_moment(row.x2, row.delta_g2));
    }
    sweep.best_row = static_cast<std::size_t>(
        std::max_element(sweep.row_max.begin(), sweep.row_max.end()) - sweep.row_max.begin());
    const std::size_t focus = nearest(sweep.z2, cfg.geometry.z1);
    if (sweep_mc) {
      mc = sweep.rows[focus];
    } else {
      analytic = sweep.rows[focus];
      if (want_mc) {
        mc = optical_profile(cfg, mask, source, {cfg.geometry.z1, sweep.z2[focus]}, true, par);
      }
    }
    out.sweep = std::move(sweep);
  } else {
    if (want_mc) mc = optical_profile(cfg, mask, source, cfg.geometry, true, par);
    if (want_analytic) analytic = optical_profile(cfg, mask, source, cfg.geometry, false, par);
  }

  if (mc) out.profiles.push_back({"montecarlo", *mc});
  if (analytic) out.profiles.push_back({"analytic", *analytic});
  if (mc && analytic) out.profiles.push_back({"difference", difference(*mc, *analytic)});

  const auto& primary = out.profiles.front();
  out.report = compute_metrics(primary.profile, mask.features, blur_width(cfg), primary.name);
}

void run_coincidence(const ScenarioConfig& cfg, RunOutput& out, Parallelism par) {
  HbtResult r;
  r.histogram = run_hbt(cfg.hbt_config(), par);
  r.g2 = estimate_g2(r.histogram);
  try {
    r.tau0 = estimate_coherence_time(r.histogram);
    r.tau0_status = "ok";
  } catch (const NotMeasurable& e) {
    r.tau0_status = std::string("not measurable: ") + e.what();
  }

  MetricsReport& m = out.report;
  m.method = "montecarlo";
  m.baseline = 1.0;
  m.visibility = r.g2.contrast / (r.g2.g2_zero + 1.0);
  m.max_delta_g2 = r.g2.contrast;
  m.peak_separation = std::numeric_limits<double>::quiet_NaN();
  m.peak_to_midpoint = std::numeric_limits<double>::quiet_NaN();
  m.second_moment = std::numeric_limits<double>::quiet_NaN();
  out.hbt = std::move(r);
}

template <typename E>
[[noreturn]] void rethrow(const std::string& context, const E& e) {
  throw E(context + e.what());
}

}  // namespace

double blur_width(const ScenarioConfig& cfg) {
  const double cw = coherence_width(cfg.source(), cfg.geometry.z1);
  return std::hypot(cw, cfg.detector_aperture);
}

RunOutput run_scenario(const ScenarioConfig& cfg, Parallelism par) {
  const std::string context = std::string(to_string(cfg.kind)) + " scenario: ";
  const auto start = std::chrono::steady_clock::now();
  RunOutput out;
  out.config = cfg;
  try {
    if (cfg.kind == ScenarioKind::Hbt) {
      run_coincidence(cfg, out, par);
    } else {
      run_optical(cfg, out, par);
    }
  } catch (const InvalidArgument& e) {
    rethrow(context, e);
  } catch (const ShapeError& e) {
    rethrow(context, e);
  } catch (const AliasingError& e) {
    rethrow(context, e);
  } catch (const DegenerateStatistics& e) {
    rethrow(context, e);
  } catch (const UnsupportedProfile& e) {
    rethrow(context, e);
  } catch (const NotMeasurable& e) {
    rethrow(context, e);
  } catch (const IoError& e) {
    rethrow(context, e);
  } catch (const ConfigError& e) {
    throw ConfigError(context + e.what());
  }
  out.report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace ghostsim
