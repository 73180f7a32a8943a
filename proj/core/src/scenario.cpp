#include "ghostsim/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "ghostsim/error.hpp"
#include "ghostsim/fresnel.hpp"
#include "ghostsim/preset_data.hpp"
#include "ghostsim/units.hpp"

namespace ghostsim {

namespace {

enum Applies : unsigned {
  kFocused = 1u,
  kSweep = 2u,
  kHbt = 4u,
  kOptical = kFocused | kSweep,
  kAll = kOptical | kHbt,
};

struct KeyInfo {
  std::string_view name;
  unsigned applies;
};

constexpr KeyInfo kKeys[] = {
    {"kind", kAll},
    {"method", kAll},
    {"seed", kAll},
    {"output", kAll},
    {"svg", kOptical},
    {"source.coherence_time", kAll},
    {"wavelength", kOptical},
    {"source.profile", kOptical},
    {"source.half_width", kOptical},
    {"z1", kOptical},
    {"z2", kFocused},
    {"sweep.z2_min", kSweep},
    {"sweep.z2_max", kSweep},
    {"sweep.steps", kSweep},
    {"mask", kOptical},
    {"mask.width", kOptical},
    {"mask.separation", kOptical},
    {"mask.d1", kOptical},
    {"mask.d2", kOptical},
    {"mask.center", kOptical},
    {"ensemble.realizations", kOptical},
    {"detector.aperture", kOptical},
    {"bucket.min", kOptical},
    {"bucket.max", kOptical},
    {"grid.source.center", kOptical},
    {"grid.source.width", kOptical},
    {"grid.source.points", kOptical},
    {"grid.object.center", kOptical},
    {"grid.object.width", kOptical},
    {"grid.object.points", kOptical},
    {"grid.detector.center", kOptical},
    {"grid.detector.width", kOptical},
    {"grid.detector.points", kOptical},
    {"hbt.dt", kHbt},
    {"hbt.segment_duration", kHbt},
    {"hbt.segments", kHbt},
    {"hbt.bin_width", kHbt},
    {"hbt.window", kHbt},
    {"hbt.start_rate", kHbt},
    {"hbt.stop_rate", kHbt},
    {"hbt.jitter", kHbt},
    {"hbt.dead_time", kHbt},
    {"hbt.shared_trace", kHbt},
};

const KeyInfo* find_key(std::string_view name) {
  for (const auto& k : kKeys) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

std::string_view trim(std::string_view s) {
  const auto space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && space(s.front())) s.remove_prefix(1);
  while (!s.empty() && space(s.back())) s.remove_suffix(1);
  return s;
}

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

class Document {
 public:
  explicit Document(std::string_view text) {
    int line_no = 0;
    while (!text.empty()) {
      const auto nl = text.find('\n');
      std::string_view line = text.substr(0, nl);
      text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError("expected 'key = value'", line_no, std::string(line));
      }
      const std::string key(trim(line.substr(0, eq)));
      const std::string value(trim(line.substr(eq + 1)));
      if (key.empty()) throw ConfigError("missing key before '='", line_no);
      if (find_key(key) == nullptr) throw ConfigError("unknown key", line_no, key);
      if (value.empty()) throw ConfigError("missing value", line_no, key);
      if (entries_.count(key) != 0) {
        throw ConfigError("duplicate key (first set on line " +
                              std::to_string(entries_[key].line) + ")",
                          line_no, key);
      }
      entries_[key] = Entry{value, line_no, false};
    }
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  const Entry* get(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  const Entry& require(const std::string& key) {
    const Entry* e = get(key);
    if (e == nullptr) throw ConfigError("required key is missing", 0, key);
    return *e;
  }

  /// Keys present in the document but meaningless for this scenario.
  void reject_unused(std::string_view kind) const {
    for (const auto& [key, e] : entries_) {
      if (!e.used) {
        throw ConfigError("key does not apply to this scenario (kind = " + std::string(kind) +
                              ", or an unrelated mask type)",
                          e.line, key);
      }
    }
  }

  void check_applicable(unsigned applies, std::string_view kind) const {
    for (const auto& [key, e] : entries_) {
      if ((find_key(key)->applies & applies) == 0) {
        throw ConfigError("key does not apply to kind = " + std::string(kind), e.line, key);
      }
    }
  }

 private:
  std::map<std::string, Entry> entries_;
};

double quantity(const Entry& e, const std::string& key, Dimension dim) {
  const auto v = parse_quantity(e.value, dim);
  if (!v || !std::isfinite(*v)) {
    const char* what = dim == Dimension::Length ? "a length (m, cm, mm, um, nm, pm)"
                       : dim == Dimension::Time ? "a time (s, ms, us, ns, ps)"
                                                : "a plain number";
    throw ConfigError(std::string("expected ") + what + ", got '" + e.value + "'", e.line, key);
  }
  return *v;
}

template <typename Int>
Int integer(const Entry& e, const std::string& key) {
  Int v{};
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw ConfigError("expected an integer, got '" + e.value + "'", e.line, key);
  }
  return v;
}

bool boolean(const Entry& e, const std::string& key) {
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  throw ConfigError("expected true or false, got '" + e.value + "'", e.line, key);
}

template <typename Enum, std::size_t N>
Enum choice(const Entry& e, const std::string& key,
            const std::pair<std::string_view, Enum> (&options)[N]) {
  std::string allowed;
  for (const auto& [name, value] : options) {
    if (name == e.value) return value;
    if (!allowed.empty()) allowed += ", ";
    allowed += name;
  }
  throw ConfigError("expected one of " + allowed + ", got '" + e.value + "'", e.line, key);
}

void require_positive(double v, const std::string& key, int line) {
  if (!(v > 0.0)) throw ConfigError("must be positive", line, key);
}

int line_of(Document& doc, const std::string& key) {
  const Entry* e = doc.get(key);
  return e == nullptr ? 0 : e->line;
}

// Extent [lo, hi] of the transmitting features of a mask spec.
std::pair<double, double> mask_extent(const MaskSpec& m) {
  switch (m.kind) {
    case MaskKind::DoubleSlit:
      return {m.center - 0.5 * (m.separation + m.width), m.center + 0.5 * (m.separation + m.width)};
    case MaskKind::PinholePair:
      return {m.center - 0.5 * (m.separation + m.d1), m.center + 0.5 * (m.separation + m.d2)};
    default:
      return {m.center, m.center};
  }
}

// Shortest decimal that reads back to the same double.
std::string number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::FocusedImage: return "focused_image";
    case ScenarioKind::Z2Sweep: return "z2_sweep";
    case ScenarioKind::Hbt: return "hbt";
  }
  return "?";
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::MonteCarlo: return "montecarlo";
    case Method::Analytic: return "analytic";
    case Method::Both: return "both";
  }
  return "?";
}

std::string_view to_string(ProfileKind kind) {
  return kind == ProfileKind::Uniform ? "uniform" : "gaussian";
}

std::string_view to_string(MaskKind kind) {
  switch (kind) {
    case MaskKind::DoubleSlit: return "double_slit";
    case MaskKind::PinholePair: return "pinhole_pair";
    case MaskKind::Uniform: return "uniform";
    case MaskKind::Opaque: return "opaque";
  }
  return "?";
}

TransverseGrid GridSpec::grid() const {
  return TransverseGrid(center - 0.5 * width, center + 0.5 * width, points);
}

std::vector<double> SweepSpec::values() const {
  std::vector<double> z(static_cast<std::size_t>(steps));
  for (std::int64_t i = 0; i < steps; ++i) {
    const auto t = static_cast<double>(i);
    const auto last = static_cast<double>(steps - 1);
    z[static_cast<std::size_t>(i)] = (z2_min * (last - t) + z2_max * t) / last;
  }
  return z;
}

SourceSpec ScenarioConfig::source() const {
  SourceProfile profile = source_profile == ProfileKind::Uniform
                              ? SourceProfile{UniformProfile{source_half_width}}
                              : SourceProfile{GaussianProfile{source_half_width}};
  return SourceSpec(wavelength, profile, coherence_time);
}

TransmissionMask ScenarioConfig::make_mask() const {
  const TransverseGrid g = object_grid.grid();
  switch (mask.kind) {
    case MaskKind::DoubleSlit:
      return TransmissionMask::double_slit(g, mask.width, mask.separation, mask.center);
    case MaskKind::PinholePair:
      return TransmissionMask::pinhole_pair(g, mask.d1, mask.d2, mask.separation, mask.center);
    case MaskKind::Uniform:
      return TransmissionMask::uniform(g);
    case MaskKind::Opaque:
      return TransmissionMask::opaque(g);
  }
  throw InvalidArgument("unknown mask kind");
}

EnsembleConfig ScenarioConfig::ensemble() const {
  const TransverseGrid obj = object_grid.grid();
  return EnsembleConfig{n_realizations,
                        seed,
                        source_grid.grid(),
                        obj,
                        detector_grid.grid(),
                        bucket.value_or(Interval{obj.x_min(), obj.x_max()}),
                        detector_aperture};
}

HbtConfig ScenarioConfig::hbt_config() const {
  HbtConfig c;
  c.tau0 = coherence_time;
  c.dt = hbt.dt;
  c.segment_duration = hbt.segment_duration;
  c.segments = hbt.segments;
  c.start = DetectorSpec{hbt.start_rate, hbt.jitter, hbt.dead_time};
  c.stop = DetectorSpec{hbt.stop_rate, hbt.jitter, hbt.dead_time};
  c.bin_width = hbt.bin_width;
  c.window = hbt.window;
  // Zero lag at the center of the middle bin.
  const auto bins = std::ceil(hbt.window / hbt.bin_width * (1.0 - 1e-12));
  c.delay = (std::floor(bins / 2.0) + 0.5) * hbt.bin_width;
  c.shared_trace = hbt.shared_trace;
  c.seed = seed;
  return c;
}

bool ScenarioConfig::operator==(const ScenarioConfig& o) const {
  if (kind != o.kind || method != o.method || seed != o.seed || output != o.output ||
      coherence_time != o.coherence_time) {
    return false;
  }
  if (kind == ScenarioKind::Hbt) return hbt == o.hbt;
  return svg == o.svg && wavelength == o.wavelength && source_profile == o.source_profile &&
         source_half_width == o.source_half_width && geometry.z1 == o.geometry.z1 &&
         geometry.z2 == o.geometry.z2 && sweep == o.sweep && mask == o.mask &&
         n_realizations == o.n_realizations && detector_aperture == o.detector_aperture &&
         bucket == o.bucket && source_grid == o.source_grid && object_grid == o.object_grid &&
         detector_grid == o.detector_grid;
}

ScenarioConfig parse_scenario(std::string_view text) {
  Document doc(text);
  ScenarioConfig cfg;

  static constexpr std::pair<std::string_view, ScenarioKind> kKinds[] = {
      {"focused_image", ScenarioKind::FocusedImage},
      {"z2_sweep", ScenarioKind::Z2Sweep},
      {"hbt", ScenarioKind::Hbt}};
  cfg.kind = choice(doc.require("kind"), "kind", kKinds);
  const std::string kind_name(to_string(cfg.kind));
  const unsigned applies = cfg.kind == ScenarioKind::FocusedImage ? kFocused
                           : cfg.kind == ScenarioKind::Z2Sweep    ? kSweep
                                                                  : kHbt;
  doc.check_applicable(applies, kind_name);

  static constexpr std::pair<std::string_view, Method> kMethods[] = {
      {"montecarlo", Method::MonteCarlo}, {"mc", Method::MonteCarlo},
      {"analytic", Method::Analytic},     {"both", Method::Both}};
  cfg.method = cfg.kind == ScenarioKind::Z2Sweep ? Method::Analytic : Method::MonteCarlo;
  if (const Entry* e = doc.get("method")) {
    cfg.method = choice(*e, "method", kMethods);
    if (cfg.kind == ScenarioKind::Hbt && cfg.method != Method::MonteCarlo) {
      throw ConfigError("hbt scenarios only support montecarlo", e->line, "method");
    }
  }
  if (const Entry* e = doc.get("seed")) cfg.seed = integer<std::uint64_t>(*e, "seed");
  if (const Entry* e = doc.get("output")) cfg.output = e->value;
  cfg.coherence_time = 0.1e-9;
  if (const Entry* e = doc.get("source.coherence_time")) {
    cfg.coherence_time = quantity(*e, "source.coherence_time", Dimension::Time);
    require_positive(cfg.coherence_time, "source.coherence_time", e->line);
  }

  if (cfg.kind == ScenarioKind::Hbt) {
    auto time = [&](const char* key, double fallback) {
      const Entry* e = doc.get(key);
      return e == nullptr ? fallback : quantity(*e, key, Dimension::Time);
    };
    auto plain = [&](const char* key, double fallback) {
      const Entry* e = doc.get(key);
      return e == nullptr ? fallback : quantity(*e, key, Dimension::Dimensionless);
    };
    auto& h = cfg.hbt;
    h.dt = time("hbt.dt", cfg.coherence_time / 10.0);
    h.segment_duration = time("hbt.segment_duration", 20e-6);
    h.segments = 1;
    if (const Entry* e = doc.get("hbt.segments")) h.segments = integer<std::int64_t>(*e, "hbt.segments");
    h.bin_width = time("hbt.bin_width", h.dt);
    h.window = time("hbt.window", 200.0 * cfg.coherence_time);
    h.start_rate = plain("hbt.start_rate", 0.05 / h.dt);
    h.stop_rate = plain("hbt.stop_rate", 0.1 / h.window);
    h.jitter = time("hbt.jitter", 0.0);
    h.dead_time = time("hbt.dead_time", 0.0);
    if (const Entry* e = doc.get("hbt.shared_trace")) h.shared_trace = boolean(*e, "hbt.shared_trace");
    doc.reject_unused(kind_name);
    try {
      cfg.hbt_config().validate();
    } catch (const InvalidArgument& err) {
      throw ConfigError(err.what(), 0, "hbt");
    }
    return cfg;
  }

  if (const Entry* e = doc.get("svg")) cfg.svg = boolean(*e, "svg");
  {
    const Entry& e = doc.require("wavelength");
    cfg.wavelength = quantity(e, "wavelength", Dimension::Length);
    require_positive(cfg.wavelength, "wavelength", e.line);
  }
  static constexpr std::pair<std::string_view, ProfileKind> kProfiles[] = {
      {"uniform", ProfileKind::Uniform}, {"gaussian", ProfileKind::Gaussian}};
  if (const Entry* e = doc.get("source.profile")) cfg.source_profile = choice(*e, "source.profile", kProfiles);
  {
    const Entry& e = doc.require("source.half_width");
    cfg.source_half_width = quantity(e, "source.half_width", Dimension::Length);
    require_positive(cfg.source_half_width, "source.half_width", e.line);
  }

  auto length = [&](const std::string& key) {
    const Entry& e = doc.require(key);
    return quantity(e, key, Dimension::Length);
  };
  auto positive_length = [&](const std::string& key) {
    const double v = length(key);
    require_positive(v, key, line_of(doc, key));
    return v;
  };

  cfg.geometry.z1 = positive_length("z1");
  if (cfg.kind == ScenarioKind::FocusedImage) {
    cfg.geometry.z2 = positive_length("z2");
  } else {
    SweepSpec s;
    s.z2_min = positive_length("sweep.z2_min");
    s.z2_max = positive_length("sweep.z2_max");
    s.steps = integer<std::int64_t>(doc.require("sweep.steps"), "sweep.steps");
    if (!(s.z2_max > s.z2_min)) {
      throw ConfigError("must exceed sweep.z2_min", line_of(doc, "sweep.z2_max"), "sweep.z2_max");
    }
    if (s.steps < 2) throw ConfigError("need at least 2 steps", line_of(doc, "sweep.steps"), "sweep.steps");
    cfg.sweep = s;
    cfg.geometry.z2 = cfg.geometry.z1;
  }

  static constexpr std::pair<std::string_view, MaskKind> kMasks[] = {
      {"double_slit", MaskKind::DoubleSlit},
      {"pinhole_pair", MaskKind::PinholePair},
      {"uniform", MaskKind::Uniform},
      {"opaque", MaskKind::Opaque}};
  cfg.mask.kind = choice(doc.require("mask"), "mask", kMasks);
  switch (cfg.mask.kind) {
    case MaskKind::DoubleSlit:
      cfg.mask.width = positive_length("mask.width");
      cfg.mask.separation = positive_length("mask.separation");
      if (doc.has("mask.center")) cfg.mask.center = length("mask.center");
      if (!(cfg.mask.separation > cfg.mask.width)) {
        throw ConfigError("slits overlap: separation must exceed width",
                          line_of(doc, "mask.separation"), "mask.separation");
      }
      break;
    case MaskKind::PinholePair:
      cfg.mask.d1 = positive_length("mask.d1");
      cfg.mask.d2 = positive_length("mask.d2");
      cfg.mask.separation = positive_length("mask.separation");
      if (doc.has("mask.center")) cfg.mask.center = length("mask.center");
      if (!(cfg.mask.separation > 0.5 * (cfg.mask.d1 + cfg.mask.d2))) {
        throw ConfigError("pinholes overlap", line_of(doc, "mask.separation"), "mask.separation");
      }
      break;
    default:
      break;
  }

  cfg.n_realizations = 4096;
  if (const Entry* e = doc.get("ensemble.realizations")) {
    cfg.n_realizations = integer<std::int64_t>(*e, "ensemble.realizations");
    if (cfg.n_realizations < 2) throw ConfigError("need at least 2", e->line, "ensemble.realizations");
  }
  if (const Entry* e = doc.get("detector.aperture")) {
    cfg.detector_aperture = quantity(*e, "detector.aperture", Dimension::Length);
    if (!(cfg.detector_aperture >= 0.0)) throw ConfigError("must be non-negative", e->line, "detector.aperture");
  }
  if (doc.has("bucket.min") || doc.has("bucket.max")) {
    const double lo = length("bucket.min");
    const double hi = length("bucket.max");
    if (!(hi > lo)) throw ConfigError("must exceed bucket.min", line_of(doc, "bucket.max"), "bucket.max");
    cfg.bucket = Interval{lo, hi};
  }

  // Grids: explicit values win, the rest follows from the coherence width.
  const double a = cfg.source_half_width;
  const double lambda = cfg.wavelength;
  const double z1 = cfg.geometry.z1;
  const double kw = lambda * z1 / (2.0 * a);
  const auto [ext_lo, ext_hi] = mask_extent(cfg.mask);
  const double extent = ext_hi - ext_lo;
  const double window = std::max(4.0 * extent, 6.0 * kw);
  double detector_window = window;
  double z_min = std::min(z1, cfg.geometry.z2);
  if (cfg.sweep) {
    const double dz = std::max(std::abs(cfg.sweep->z2_min - z1), std::abs(cfg.sweep->z2_max - z1));
    detector_window = std::max(window, 1.5 * (extent + 2.0 * a * dz / z1));
    z_min = std::min(z1, cfg.sweep->z2_min);
  }

  auto resolve = [&](const std::string& prefix, double center, double width, double max_dx,
                     std::int64_t min_points) {
    GridSpec g;
    g.center = center;
    g.width = width;
    if (doc.has(prefix + ".center")) g.center = length(prefix + ".center");
    if (doc.has(prefix + ".width")) g.width = positive_length(prefix + ".width");
    if (const Entry* e = doc.get(prefix + ".points")) {
      g.points = integer<std::int64_t>(*e, prefix + ".points");
      if (g.points < 2) throw ConfigError("need at least 2", e->line, prefix + ".points");
    } else {
      g.points = static_cast<std::int64_t>(make_grid_with_spacing(g.center, g.width, max_dx, min_points).size());
    }
    return g;
  };

  const double mask_center = 0.5 * (ext_lo + ext_hi);
  cfg.object_grid = resolve("grid.object", mask_center, window, std::min(lambda * z1 / (8.0 * a), kw / 4.0), 2);
  cfg.detector_grid = resolve("grid.detector", mask_center, detector_window, kw / 4.0, 2);

  const double source_width = cfg.source_profile == ProfileKind::Uniform ? 2.0 * a : 6.0 * a;
  const double lo = std::min({-0.5 * source_width, cfg.object_grid.center - 0.5 * cfg.object_grid.width,
                              cfg.detector_grid.center - 0.5 * cfg.detector_grid.width});
  const double hi = std::max({0.5 * source_width, cfg.object_grid.center + 0.5 * cfg.object_grid.width,
                              cfg.detector_grid.center + 0.5 * cfg.detector_grid.width});
  const double source_dx = 0.5 * max_fresnel_spacing(hi - lo + cfg.detector_aperture, z_min, lambda);
  cfg.source_grid = resolve("grid.source", 0.0, source_width, source_dx, 256);

  doc.reject_unused(kind_name);

  if (cfg.bucket) {
    const auto og = cfg.object_grid.grid();
    if (cfg.bucket->lo < og.x_min() || cfg.bucket->hi > og.x_max()) {
      throw ConfigError("bucket window must lie inside the object grid", line_of(doc, "bucket.min"), "bucket.min");
    }
  }
  return cfg;
}

std::string dump_scenario(const ScenarioConfig& cfg) {
  std::ostringstream out;
  auto put = [&](std::string_view key, const std::string& value) { out << key << " = " << value << '\n'; };
  auto put_grid = [&](std::string_view prefix, const GridSpec& g) {
    put(std::string(prefix) + ".center", number(g.center));
    put(std::string(prefix) + ".width", number(g.width));
    put(std::string(prefix) + ".points", std::to_string(g.points));
  };

  put("kind", std::string(to_string(cfg.kind)));
  put("method", std::string(to_string(cfg.method)));
  put("seed", std::to_string(cfg.seed));
  put("output", cfg.output);
  put("source.coherence_time", number(cfg.coherence_time));

  if (cfg.kind == ScenarioKind::Hbt) {
    const auto& h = cfg.hbt;
    put("hbt.dt", number(h.dt));
    put("hbt.segment_duration", number(h.segment_duration));
    put("hbt.segments", std::to_string(h.segments));
    put("hbt.bin_width", number(h.bin_width));
    put("hbt.window", number(h.window));
    put("hbt.start_rate", number(h.start_rate));
    put("hbt.stop_rate", number(h.stop_rate));
    put("hbt.jitter", number(h.jitter));
    put("hbt.dead_time", number(h.dead_time));
    put("hbt.shared_trace", h.shared_trace ? "true" : "false");
    return out.str();
  }

  put("svg", cfg.svg ? "true" : "false");
  put("wavelength", number(cfg.wavelength));
  put("source.profile", std::string(to_string(cfg.source_profile)));
  put("source.half_width", number(cfg.source_half_width));
  put("z1", number(cfg.geometry.z1));
  if (cfg.sweep) {
    put("sweep.z2_min", number(cfg.sweep->z2_min));
    put("sweep.z2_max", number(cfg.sweep->z2_max));
    put("sweep.steps", std::to_string(cfg.sweep->steps));
  } else {
    put("z2", number(cfg.geometry.z2));
  }
  put("mask", std::string(to_string(cfg.mask.kind)));
  switch (cfg.mask.kind) {
    case MaskKind::DoubleSlit:
      put("mask.width", number(cfg.mask.width));
      put("mask.separation", number(cfg.mask.separation));
      put("mask.center", number(cfg.mask.center));
      break;
    case MaskKind::PinholePair:
      put("mask.d1", number(cfg.mask.d1));
      put("mask.d2", number(cfg.mask.d2));
      put("mask.separation", number(cfg.mask.separation));
      put("mask.center", number(cfg.mask.center));
      break;
    default:
      break;
  }
  put("ensemble.realizations", std::to_string(cfg.n_realizations));
  put("detector.aperture", number(cfg.detector_aperture));
  if (cfg.bucket) {
    put("bucket.min", number(cfg.bucket->lo));
    put("bucket.max", number(cfg.bucket->hi));
  }
  put_grid("grid.source", cfg.source_grid);
  put_grid("grid.object", cfg.object_grid);
  put_grid("grid.detector", cfg.detector_grid);
  return out.str();
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : detail::kPresetData) names.emplace_back(name);
  std::sort(names.begin(), names.end());
  return names;
}

std::string_view preset_text(std::string_view name) {
  for (const auto& [n, text] : detail::kPresetData) {
    if (n == name) return text;
  }
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

}  // namespace ghostsim
