#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ghostsim/coincidence.hpp"
#include "ghostsim/ensemble.hpp"
#include "ghostsim/mask.hpp"
#include "ghostsim/source.hpp"

namespace ghostsim {

enum class ScenarioKind { FocusedImage, Z2Sweep, Hbt };
enum class Method { MonteCarlo, Analytic, Both };
enum class ProfileKind { Uniform, Gaussian };
enum class MaskKind { DoubleSlit, PinholePair, Uniform, Opaque };

std::string_view to_string(ScenarioKind kind);
std::string_view to_string(Method method);
std::string_view to_string(ProfileKind kind);
std::string_view to_string(MaskKind kind);

struct MaskSpec {
  MaskKind kind = MaskKind::DoubleSlit;
  double width = 0.0;       ///< double slit
  double separation = 0.0;  ///< center to center (double slit, pinhole pair)
  double d1 = 0.0;          ///< pinhole pair
  double d2 = 0.0;
  double center = 0.0;

  bool operator==(const MaskSpec&) const = default;
};

struct GridSpec {
  double center = 0.0;
  double width = 0.0;
  std::int64_t points = 0;

  TransverseGrid grid() const;
  bool operator==(const GridSpec&) const = default;
};

struct SweepSpec {
  double z2_min = 0.0;
  double z2_max = 0.0;
  std::int64_t steps = 0;

  std::vector<double> values() const;
  bool operator==(const SweepSpec&) const = default;
};

struct HbtSpec {
  double dt = 0.0;
  double segment_duration = 0.0;
  std::int64_t segments = 0;
  double bin_width = 0.0;
  double window = 0.0;
  double start_rate = 0.0;
  double stop_rate = 0.0;
  double jitter = 0.0;
  double dead_time = 0.0;
  bool shared_trace = true;

  bool operator==(const HbtSpec&) const = default;
};

/// Fully resolved scenario: every default is filled in by parse_scenario.
struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::FocusedImage;
  Method method = Method::Analytic;
  std::uint64_t seed = 0;
  std::string output = "results";
  bool svg = false;

  double wavelength = 0.0;
  ProfileKind source_profile = ProfileKind::Uniform;
  double source_half_width = 0.0;
  double coherence_time = 0.0;

  OpticalGeometry geometry{1.0, 1.0};
  std::optional<SweepSpec> sweep;
  MaskSpec mask;

  std::int64_t n_realizations = 0;
  double detector_aperture = 0.0;
  std::optional<Interval> bucket;  ///< default: whole object grid

  GridSpec source_grid;
  GridSpec object_grid;
  GridSpec detector_grid;

  HbtSpec hbt;

  SourceSpec source() const;
  TransmissionMask make_mask() const;
  /// Ensemble settings for a given reference-arm distance.
  EnsembleConfig ensemble() const;
  HbtConfig hbt_config() const;

  bool operator==(const ScenarioConfig& other) const;
};

/// Parses the flat `key = value` scenario format (see docs/scenario-format.md).
/// Unknown keys, keys that do not apply to the scenario kind, duplicates, missing
/// required keys and unit violations raise ConfigError naming the line and key.
ScenarioConfig parse_scenario(std::string_view text);

/// Canonical dump with every key explicit, in SI units; parse_scenario(dump) == cfg.
std::string dump_scenario(const ScenarioConfig& cfg);

std::vector<std::string> preset_names();
/// Throws ConfigError for an unknown preset.
std::string_view preset_text(std::string_view name);

}  // namespace ghostsim
