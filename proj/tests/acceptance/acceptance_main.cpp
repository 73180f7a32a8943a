// Acceptance gate: one PASS/FAIL line per criterion. Exit status is non-zero if any fails.
// Usage: ghostsim_acceptance [criterion ...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ghostsim/analytic.hpp"
#include "ghostsim/coincidence.hpp"
#include "ghostsim/ensemble.hpp"
#include "ghostsim/error.hpp"
#include "ghostsim/export.hpp"
#include "ghostsim/fresnel.hpp"
#include "ghostsim/kernel.hpp"
#include "ghostsim/runner.hpp"
#include "ghostsim/scenario.hpp"

using namespace ghostsim;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Replaces or appends `key = value` lines in a scenario document; an empty value drops the key.
std::string edit_scenario(std::string text, const std::vector<std::pair<std::string, std::string>>& edits) {
  for (const auto& [key, value] : edits) {
    std::istringstream in(text);
    std::string line;
    std::string out;
    bool found = false;
    while (std::getline(in, line)) {
      const auto eq = line.find('=');
      std::string k = eq == std::string::npos ? "" : line.substr(0, eq);
      k.erase(k.find_last_not_of(" \t") + 1);
      if (k == key) {
        found = true;
        if (!value.empty()) out += key + " = " + value + "\n";
        continue;
      }
      out += line + "\n";
    }
    if (!found && !value.empty()) out += key + " = " + value + "\n";
    text = out;
  }
  return text;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome mc_vs_analytic() {
  const auto t0 = std::chrono::steady_clock::now();
  const ScenarioConfig cfg = parse_scenario(edit_scenario(
      std::string(preset_text("fig3")),
      {{"kind", "focused_image"}, {"sweep.z2_min", ""}, {"sweep.z2_max", ""}, {"sweep.steps", ""}, {"z2", "300mm"}}));
  const auto mask = cfg.make_mask();
  const auto source = cfg.source();
  const auto mc = delta_g2_montecarlo(mask, source, cfg.geometry, cfg.ensemble());
  const auto an = delta_g2_analytic(mask, source, cfg.geometry, cfg.detector_grid.grid());
  std::size_t agree = 0;
  for (std::size_t i = 0; i < mc.size(); ++i) {
    if (std::abs(mc.delta_g2[i] - an.delta_g2[i]) <= 3.0 * mc.std_err[i]) ++agree;
  }
  const double fraction = static_cast<double>(agree) / static_cast<double>(mc.size());
  const double t = seconds_since(t0);
  return {fraction >= 0.95 && mc.size() == 512 && mc.n_realizations == 4096,
          fmt("%zu-point grid, n=%lld: %.1f%% of x2 within 3 std_err (need >= 95%%), %.1f s",
              mc.size(), static_cast<long long>(mc.n_realizations), 100.0 * fraction, t)};
}

Outcome focus_sweep() {
  const ScenarioConfig cfg = parse_scenario(preset_text("fig3"));
  const auto run = run_scenario(cfg);
  const auto& s = *run.sweep;
  const std::size_t n = s.z2.size();
  std::size_t focus = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(s.z2[i] - 0.3) < std::abs(s.z2[focus] - 0.3)) focus = i;
  }
  const std::size_t best = s.best_row;
  const bool peak_ok = (best + 1 >= focus) && (best <= focus + 1);
  bool moment_ok = true;
  for (std::size_t i = focus + 1; i < n; ++i) moment_ok = moment_ok && s.row_second_moment[i] > s.row_second_moment[i - 1];
  for (std::size_t i = focus; i-- > 0;) moment_ok = moment_ok && s.row_second_moment[i] > s.row_second_moment[i + 1];
  const auto& r = run.report;
  const bool peaks_ok = r.peak_positions.size() >= 2 && r.peak_to_midpoint > 2.0;
  return {n == 21 && peak_ok && moment_ok && peaks_ok,
          fmt("%zu steps, max at z2=%.1f mm, second moment monotone: %s, %zu peaks at focus, "
              "peak/midpoint=%.2f (need > 2), %.1f s",
              n, s.z2[best] * 1e3, moment_ok ? "yes" : "no", r.peak_positions.size(), r.peak_to_midpoint,
              r.runtime_seconds)};
}

Outcome two_pinholes() {
  const ScenarioConfig cfg = parse_scenario(preset_text("fig2"));
  const auto run = run_scenario(cfg);
  const auto& r = run.report;
  const double step = cfg.detector_grid.grid().dx();
  if (r.peak_positions.size() < 2) return {false, fmt("found %zu peaks", r.peak_positions.size())};
  const bool sep_ok = std::abs(r.peak_separation - 3.66e-3) <= step + 1e-12;
  const double kw = coherence_width(cfg.source(), cfg.geometry.z1);
  // Match each peak to the nearer pinhole.
  bool width_ok = true;
  std::string widths;
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& f = std::min_element(r.features.begin(), r.features.end(), [&](const auto& a, const auto& b) {
      return std::abs(a.center - r.peak_positions[i]) < std::abs(b.center - r.peak_positions[i]);
    });
    const double expected = std::hypot(f->width, kw);
    const double ratio = r.fwhm_per_peak[i] / expected;
    width_ok = width_ok && ratio >= 0.5 && ratio <= 2.0;
    widths += fmt("%s%.2f mm (x%.2f)", i ? ", " : "", r.fwhm_per_peak[i] * 1e3, ratio);
  }
  const bool vis_ok = r.visibility >= 0.01 && r.visibility <= 0.20;
  return {sep_ok && width_ok && vis_ok,
          fmt("separation %.3f mm (3.66 +- %.2f), FWHM %s of pinhole (+) coherence width, visibility %.2f%% "
              "(need 1-20%%)",
              r.peak_separation * 1e3, step * 1e3, widths.c_str(), 100.0 * r.visibility)};
}

Outcome pointlike() {
  auto features = [](std::size_t n) {
    PointlikeObject o;
    for (std::size_t i = 0; i < n; ++i) {
      o.feature_positions.push_back(1e-3 * static_cast<double>(i));
      o.feature_weights.push_back(1.0);
    }
    return o;
  };
  const double v2 = pointlike_visibility(features(2), 1e-15);
  const double v1 = pointlike_visibility(features(1), 1e-15);
  const double v10 = pointlike_visibility(features(10), 1e-15);
  const bool ok = std::abs(v2 - 0.2) <= 1e-12 && std::abs(v1 - 1.0 / 3.0) <= 1e-12 &&
                  std::abs(v10 - 1.0 / 21.0) <= 1e-12 && std::abs(v10 - 0.048) < 5e-4;
  return {ok, fmt("N=2: %.15f, N=1: %.15f, N=10: %.15f", v2, v1, v10)};
}

Outcome sinc_law() {
  const SourceSpec s(693e-9, UniformProfile{6e-3}, 1e-10);
  const OpticalGeometry g{0.3, 0.3};
  const double kw = predicted_speckle_size(s, 0.3);
  const double x1 = 25e-6;
  const double k0 = std::norm(mutual_coherence_kernel(x1, x1, s, g));
  double worst = 0.0;
  for (int i = -400; i <= 400; ++i) {
    const double dx = 4.0 * kw * i / 400.0;
    const double u = 2.0 * 6e-3 * dx / (693e-9 * 0.3);
    const double sinc = u == 0.0 ? 1.0 : std::sin(std::numbers::pi * u) / (std::numbers::pi * u);
    worst = std::max(worst, std::abs(std::norm(mutual_coherence_kernel(x1, x1 + dx, s, g)) / k0 - sinc * sinc));
  }

  // 1.67 mm source at 1.7 m: locate the first zero of |K|^2 numerically.
  const SourceSpec p(692.9e-9, UniformProfile{0.835e-3}, 1e-10);
  const OpticalGeometry pg{1.7, 1.7};
  auto k2 = [&](double d) { return std::norm(mutual_coherence_kernel(0.0, d, p, pg)); };
  double lo = 0.5e-3, hi = 0.9e-3;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 100; ++it) {
    const double a = hi - phi * (hi - lo);
    const double b = lo + phi * (hi - lo);
    if (k2(a) < k2(b)) hi = b; else lo = a;
  }
  const double zero = 0.5 * (lo + hi);
  const bool ok = worst < 1e-6 && std::abs(zero - 0.705e-3) <= 0.01 * 0.705e-3;
  return {ok, fmt("max |K|^2 deviation from sinc^2 %.2e (need < 1e-6); first zero at 1.7 m %.4f mm (0.705 +- 1%%)",
                  worst, zero * 1e3)};
}

Outcome propagation() {
  const double lambda = 693e-9;
  const double z = 0.3;
  double worst_power = 0.0;
  double worst_oracle = 0.0;
  for (const std::int64_t n : {256, 1024, 4096}) {
    const TransverseGrid in(-1e-3, 1e-3, n);
    ComplexField f(in);
    for (std::size_t i = 0; i < in.size(); ++i) {
      const double x = in.x(i);
      f.amplitude[i] = std::exp(-x * x / (0.25e-3 * 0.25e-3)) * std::polar(1.0, 2e3 * x);
    }
    const TransverseGrid out(-2e-3, 2e-3, n);
    const auto fast = fresnel_propagate(f, z, lambda, out, PropagationMethod::Fast);
    const auto direct = fresnel_propagate(f, z, lambda, out, PropagationMethod::Direct);
    double diff = 0.0;
    double ref = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      diff = std::max(diff, std::abs(fast.amplitude[i] - direct.amplitude[i]));
      ref = std::max(ref, std::abs(direct.amplitude[i]));
    }
    worst_oracle = std::max(worst_oracle, diff / ref);

    // Unitarity: equal spacing on both sides, output window holds the spread beam.
    const TransverseGrid same(-2e-3, 2e-3, 2 * n - 1);
    const auto wide = fresnel_propagate(f, z, lambda, same, PropagationMethod::Fast);
    worst_power = std::max(worst_power, std::abs(wide.total_power() / f.total_power() - 1.0));
  }
  return {worst_power <= 1e-9 && worst_oracle <= 1e-9,
          fmt("power drift %.2e, fast vs direct %.2e (both need <= 1e-9; grids up to 4096)", worst_power,
              worst_oracle)};
}

Outcome hbt() {
  const auto t0 = std::chrono::steady_clock::now();
  const ScenarioConfig cfg = parse_scenario(preset_text("hbt"));
  HbtConfig base = cfg.hbt_config();
  const double tau0 = base.tau0;
  const std::vector<double> jitters{0.0, tau0, 3.5 * tau0, 10.0 * tau0};
  constexpr int kSeeds = 10;

  std::vector<double> mean_contrast(jitters.size(), 0.0);
  G2Estimate clean;
  std::optional<double> tau0_clean;
  bool washed_out_reported = true;
  double one_seed = 0.0;
  for (int seed = 0; seed < kSeeds; ++seed) {
    HbtConfig c = base;
    c.seed = base.seed + static_cast<std::uint64_t>(seed);
    const auto ts = std::chrono::steady_clock::now();
    const auto hists = run_hbt_sweep(c, jitters);
    if (seed == 0) one_seed = seconds_since(ts);
    for (std::size_t j = 0; j < jitters.size(); ++j) mean_contrast[j] += estimate_g2(hists[j]).contrast / kSeeds;
    if (seed == 0) {
      clean = estimate_g2(hists[0]);
      try {
        tau0_clean = estimate_coherence_time(hists[0]);
      } catch (const NotMeasurable&) {
      }
    }
    try {
      estimate_coherence_time(hists.back());
      washed_out_reported = false;
    } catch (const NotMeasurable&) {
    }
  }
  bool monotone = true;
  for (std::size_t j = 1; j < jitters.size(); ++j) monotone = monotone && mean_contrast[j] <= mean_contrast[j - 1];
  const bool g2_ok = clean.g2_zero >= 1.85 && clean.g2_zero <= 2.05;
  const bool tau_ok = tau0_clean && std::abs(*tau0_clean / tau0 - 1.0) <= 0.2;
  const double t = seconds_since(t0);
  return {g2_ok && monotone && tau_ok && washed_out_reported && one_seed < 120.0,
          fmt("g2(0)=%.3f +- %.3f, contrast vs jitter {0,1,3.5,10} tau0 = {%.3f, %.3f, %.3f, %.3f} "
              "(%d seeds), tau0 %s, jitter 10 tau0 -> %s, one 4-jitter run %.1f s (need < 120), suite %.1f s",
              clean.g2_zero, clean.g2_zero_std_err, mean_contrast[0], mean_contrast[1], mean_contrast[2],
              mean_contrast[3], kSeeds, tau0_clean ? fmt("%.4f ns", *tau0_clean * 1e9).c_str() : "n/a",
              washed_out_reported ? "not measurable" : "a number", one_seed, t)};
}

std::vector<std::pair<std::string, std::string>> read_dir(const std::filesystem::path& dir) {
  std::vector<std::pair<std::string, std::string>> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    files.emplace_back(e.path().filename().string(), s.str());
  }
  std::sort(files.begin(), files.end());
  return files;
}

Outcome determinism() {
  const std::vector<std::pair<std::string, std::string>> scenarios{
      {"focused_both", edit_scenario(std::string(preset_text("fig3")),
                                     {{"kind", "focused_image"}, {"method", "both"}, {"sweep.z2_min", ""},
                                      {"sweep.z2_max", ""}, {"sweep.steps", ""}, {"z2", "300mm"},
                                      {"ensemble.realizations", "1000"}, {"svg", "true"}})},
      {"fig2", edit_scenario(std::string(preset_text("fig2")), {{"ensemble.realizations", "2000"}})},
      {"sweep_mc", edit_scenario(std::string(preset_text("fig3")),
                                 {{"method", "montecarlo"}, {"sweep.steps", "3"}, {"ensemble.realizations", "200"},
                                  {"grid.detector.points", "128"}})},
      {"hbt", edit_scenario(std::string(preset_text("hbt")), {{"hbt.segments", "4"}})},
  };
  const auto root = std::filesystem::temp_directory_path() / "ghostsim_acceptance_determinism";
  std::filesystem::remove_all(root);
  std::size_t compared = 0;
  std::string mismatch;
  for (const auto& [name, text] : scenarios) {
    const ScenarioConfig cfg = parse_scenario(text);
    std::vector<std::vector<std::pair<std::string, std::string>>> outputs;
    for (unsigned workers : {1u, 2u, 8u}) {
      const auto dir = root / (name + "_" + std::to_string(workers));
      export_results(run_scenario(cfg, Parallelism{workers}), dir, {cfg.svg});
      outputs.push_back(read_dir(dir));
    }
    for (std::size_t k = 1; k < outputs.size(); ++k) {
      if (outputs[k] != outputs[0] && mismatch.empty()) mismatch = name;
    }
    compared += outputs[0].size();
  }
  std::filesystem::remove_all(root);
  return {mismatch.empty(), mismatch.empty()
                                ? fmt("%zu files x 4 scenarios byte-identical at 1, 2 and 8 workers", compared / 1)
                                : "outputs differ for scenario " + mismatch};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"MC vs analytic oracle (fig3, z2 = z1)", mc_vs_analytic},
      {"fig3 focus sweep shape", focus_sweep},
      {"fig2 two-pinhole geometry and visibility", two_pinholes},
      {"point-like visibility arithmetic", pointlike},
      {"coherence kernel sinc law and first zero", sinc_law},
      {"propagation unitarity and fast/direct agreement", propagation},
      {"HBT suite", hbt},
      {"determinism across worker counts", determinism},
  };
  std::vector<bool> selected(criteria.size(), argc <= 1);
  for (int i = 1; i < argc; ++i) {
    const int k = std::atoi(argv[i]);
    if (k >= 1 && k <= static_cast<int>(criteria.size())) selected[static_cast<std::size_t>(k - 1)] = true;
  }

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!selected[i]) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("[%s] %zu. %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
