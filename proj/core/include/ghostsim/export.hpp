#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ghostsim/runner.hpp"

namespace ghostsim {

struct ExportOptions {
  bool svg = false;
};

/// Writes the run's files into `out_dir` (created if needed) and returns their paths:
///   profile.csv            x2_m,delta_g2,std_err (primary profile)
///   profile_analytic.csv   and profile_difference.csv when both methods ran
///   sweep.csv              z2_m,x2_m,delta_g2 in long format
///   histogram.csv          t_s,counts,g2 for HBT runs
///   metrics.json           MetricsReport plus sweep/HBT summaries (no wall-clock time,
///                          so every file is byte-stable for a fixed seed)
///   scenario.resolved      the fully resolved scenario, reloadable as input
///   profile.svg            optional line plot
/// Throws IoError with the offending path on failure.
std::vector<std::filesystem::path> export_results(const RunOutput& run,
                                                  const std::filesystem::path& out_dir,
                                                  ExportOptions options = {});

/// RFC-4180 field quoting.
std::string csv_field(const std::string& text);

/// metrics.json content.
std::string metrics_json(const RunOutput& run);

/// Self-contained SVG line plot of a profile.
std::string render_profile_svg(const CorrelationProfile& profile, const std::string& title);

}  // namespace ghostsim
