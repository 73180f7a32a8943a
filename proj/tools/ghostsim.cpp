// ghostsim: run, inspect and validate ghost-imaging scenarios.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "ghostsim/error.hpp"
#include "ghostsim/export.hpp"
#include "ghostsim/runner.hpp"
#include "ghostsim/scenario.hpp"
#include "ghostsim/units.hpp"

namespace {

enum ExitCode { kOk = 0, kConfig = 2, kNumerical = 3, kIo = 4 };

// "preset:NAME" selects a bundled preset, anything else is a file path.
std::string load_scenario_text(const std::string& source) {
  constexpr std::string_view prefix = "preset:";
  if (source.rfind(prefix, 0) == 0) return std::string(ghostsim::preset_text(source.substr(prefix.size())));
  std::ifstream in(source, std::ios::binary);
  if (!in) throw ghostsim::IoError("cannot read scenario file " + source);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

unsigned resolve_threads(int requested) {
  if (requested > 0) return static_cast<unsigned>(requested);
  if (const char* env = std::getenv("GHOSTSIM_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n < 1) {
      throw ghostsim::ConfigError(std::string("GHOSTSIM_THREADS must be a positive integer, got '") + env + "'");
    }
    return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run_command(const std::string& file, std::optional<std::uint64_t> seed,
                const std::string& method, const std::string& out, int threads) {
  ghostsim::ScenarioConfig cfg = ghostsim::parse_scenario(load_scenario_text(file));
  if (seed) cfg.seed = *seed;
  if (method == "mc") cfg.method = ghostsim::Method::MonteCarlo;
  if (method == "analytic") cfg.method = ghostsim::Method::Analytic;
  if (method == "both") cfg.method = ghostsim::Method::Both;
  if (!out.empty()) cfg.output = out;
  cfg = ghostsim::parse_scenario(ghostsim::dump_scenario(cfg));

  const ghostsim::Parallelism par{resolve_threads(threads)};
  const auto run = ghostsim::run_scenario(cfg, par);
  const auto files = ghostsim::export_results(run, cfg.output, {cfg.svg});

  for (const auto& f : files) std::cout << "wrote " << f.string() << '\n';
  const auto& r = run.report;
  std::cout << "visibility " << ghostsim::format_double(r.visibility) << '\n';
  if (r.peak_positions.size() >= 2) {
    std::cout << "peak_separation_m " << ghostsim::format_double(r.peak_separation) << '\n';
  }
  if (run.hbt) {
    std::cout << "g2_zero " << ghostsim::format_double(run.hbt->g2.g2_zero) << '\n';
    std::cout << "tau0 " << (run.hbt->tau0 ? ghostsim::format_double(*run.hbt->tau0) : run.hbt->tau0_status)
              << '\n';
  }
  std::cerr << "runtime_seconds " << r.runtime_seconds << " (" << par.workers << " workers)\n";
  return kOk;
}

int validate_command(const std::string& file) {
  const ghostsim::ScenarioConfig cfg = ghostsim::parse_scenario(load_scenario_text(file));
  if (cfg.kind != ghostsim::ScenarioKind::Hbt) {
    cfg.source();
    cfg.make_mask();
    cfg.ensemble().validate();
  }
  std::cout << ghostsim::dump_scenario(cfg);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lensless ghost imaging with thermal light: speckle ensembles, analytic kernels, HBT"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a scenario file (or preset:NAME) and write results");
  std::string run_file;
  std::optional<std::uint64_t> seed;
  std::string method;
  std::string out;
  int threads = 0;
  run->add_option("scenario", run_file, "Scenario file")->required();
  run->add_option("--seed", seed, "Master seed (overrides the file)");
  run->add_option("--method", method, "Estimator")->check(CLI::IsMember({"mc", "analytic", "both"}));
  run->add_option("--out", out, "Output directory (overrides the file)");
  run->add_option("--threads", threads, "Worker threads (default: $GHOSTSIM_THREADS, else all cores)")
      ->check(CLI::PositiveNumber);

  auto* presets = app.add_subcommand("presets", "List or print the bundled presets");
  presets->require_subcommand(1);
  auto* list = presets->add_subcommand("list", "Preset names");
  auto* dump = presets->add_subcommand("dump", "Print a preset with every default resolved");
  std::string preset_name;
  dump->add_option("name", preset_name, "Preset name")->required();

  auto* validate = app.add_subcommand("validate", "Parse a scenario and print its resolved form");
  std::string validate_file;
  validate->add_option("scenario", validate_file, "Scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run) return run_command(run_file, seed, method, out, threads);
    if (*validate) return validate_command(validate_file);
    if (*list) {
      for (const auto& name : ghostsim::preset_names()) std::cout << name << '\n';
      return kOk;
    }
    if (*dump) {
      std::cout << ghostsim::dump_scenario(ghostsim::parse_scenario(ghostsim::preset_text(preset_name)));
      return kOk;
    }
  } catch (const ghostsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const ghostsim::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const ghostsim::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const ghostsim::Error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
  return kOk;
}
