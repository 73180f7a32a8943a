#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ghostsim/coincidence.hpp"
#include "ghostsim/ensemble.hpp"
#include "ghostsim/metrics.hpp"
#include "ghostsim/parallel.hpp"
#include "ghostsim/scenario.hpp"

namespace ghostsim {

struct NamedProfile {
  std::string name;  ///< "montecarlo", "analytic" or "difference"
  CorrelationProfile profile;
};

struct SweepResult {
  std::vector<double> z2;
  std::vector<CorrelationProfile> rows;  ///< one per z2, same x2 samples
  std::vector<double> row_max;
  std::vector<double> row_second_moment;
  std::size_t best_row = 0;              ///< row with the largest maximum
};

struct HbtResult {
  CoincidenceHistogram histogram;
  G2Estimate g2;
  std::optional<double> tau0;  ///< empty when not measurable
  std::string tau0_status;     ///< "ok" or the reason it is not measurable
};

struct RunOutput {
  ScenarioConfig config;
  std::vector<NamedProfile> profiles;
  std::optional<SweepResult> sweep;
  std::optional<HbtResult> hbt;
  MetricsReport report;
};

/// Dispatches a scenario to the simulation modules and computes its metrics.
/// Library errors are rethrown with the scenario kind prefixed to the message.
RunOutput run_scenario(const ScenarioConfig& cfg, Parallelism par = {});

/// Width used to delimit feature neighborhoods: the coherence width combined in
/// quadrature with the detector aperture.
double blur_width(const ScenarioConfig& cfg);

}  // namespace ghostsim
