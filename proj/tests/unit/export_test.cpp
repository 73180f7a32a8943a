#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ghostsim/error.hpp"
#include "ghostsim/export.hpp"
#include "ghostsim/scenario.hpp"

using namespace ghostsim;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("ghostsim_export_test_" + name);
  fs::remove_all(p);
  return p;
}

const char* kSweep =
    "kind = z2_sweep\n"
    "method = analytic\n"
    "wavelength = 693nm\n"
    "source.half_width = 6mm\n"
    "z1 = 300mm\n"
    "sweep.z2_min = 250mm\n"
    "sweep.z2_max = 350mm\n"
    "sweep.steps = 3\n"
    "mask = double_slit\n"
    "mask.width = 100um\n"
    "mask.separation = 200um\n"
    "grid.detector.points = 64\n"
    "svg = true\n";

}  // namespace

TEST(Export, CsvQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
}

TEST(Export, SweepFilesAndShape) {
  const auto cfg = parse_scenario(kSweep);
  const auto run = run_scenario(cfg);
  const auto dir = scratch("sweep");
  const auto files = export_results(run, dir, {true});
  for (const char* name : {"profile.csv", "sweep.csv", "metrics.json", "scenario.resolved", "profile.svg"}) {
    EXPECT_TRUE(fs::exists(dir / name)) << name;
  }
  EXPECT_EQ(files.size(), 5u);
  const auto sweep = slurp(dir / "sweep.csv");
  EXPECT_EQ(sweep.substr(0, sweep.find('\n')), "z2_m,x2_m,delta_g2");
  EXPECT_EQ(count_lines(sweep), 1 + 3 * 64u);
  EXPECT_EQ(sweep.find('\r'), std::string::npos);
  const auto profile = slurp(dir / "profile.csv");
  EXPECT_EQ(profile.substr(0, profile.find('\n')), "x2_m,delta_g2,std_err");
  EXPECT_EQ(count_lines(profile), 1 + 64u);
  // The resolved scenario reloads to the same configuration.
  EXPECT_EQ(parse_scenario(slurp(dir / "scenario.resolved")), cfg);
  EXPECT_NE(slurp(dir / "profile.svg").find("<svg"), std::string::npos);

  // A second export is byte-identical.
  const auto again = scratch("sweep_again");
  export_results(run_scenario(cfg), again, {true});
  for (const auto& f : files) EXPECT_EQ(slurp(f), slurp(again / f.filename())) << f;
}

TEST(Export, EmptyRunWritesMetricsOnly) {
  RunOutput run;
  run.config = parse_scenario(preset_text("fig2"));
  const auto dir = scratch("empty");
  const auto files = export_results(run, dir);
  ASSERT_EQ(files.size(), 2u);
  EXPECT_TRUE(fs::exists(dir / "metrics.json"));
  EXPECT_TRUE(fs::exists(dir / "scenario.resolved"));
}

TEST(Export, UnwritableDirectory) {
  const auto blocker = scratch("blocker");
  std::ofstream(blocker) << "x";
  RunOutput run;
  run.config = parse_scenario(preset_text("fig2"));
  EXPECT_THROW(export_results(run, blocker / "sub"), IoError);
  fs::remove(blocker);
}

TEST(Export, MetricsJsonNullsForUndefined) {
  RunOutput run;
  run.config = parse_scenario(preset_text("hbt"));
  run.report.peak_separation = std::numeric_limits<double>::quiet_NaN();
  const auto json = metrics_json(run);
  EXPECT_NE(json.find("\"peak_separation_m\": null"), std::string::npos);
  EXPECT_EQ(json.find("nan"), std::string::npos);
}
