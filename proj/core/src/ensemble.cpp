#include "ghostsim/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ghostsim/error.hpp"
#include "ghostsim/rng.hpp"

namespace ghostsim {
namespace {

constexpr std::size_t kMaxJackknifeGroups = 32;

// Grid the reference arm is propagated onto: the detector grid itself for a
// point detector, otherwise a finer grid padded by half the aperture so every
// detector sample owns a centered averaging window.
struct DetectorSampling {
  TransverseGrid grid;
  std::size_t oversample;
  std::size_t half_window;
};

DetectorSampling detector_sampling(const EnsembleConfig& cfg, double z2, double wavelength) {
  const auto& det = cfg.detector_grid;
  if (cfg.detector_aperture == 0.0) return {det, 1, 0};
  // Speckle at the detector is ~ lambda z / (source span); sample it 4x finer.
  const double target = wavelength * z2 / (4.0 * cfg.source_grid.span());
  const auto oversample =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(det.dx() / target)));
  const double h = det.dx() / static_cast<double>(oversample);
  const auto half = static_cast<std::size_t>(std::llround(0.5 * cfg.detector_aperture / h));
  const std::size_t n = (det.size() - 1) * oversample + 2 * half + 1;
  const double pad = static_cast<double>(half) * h;
  return {TransverseGrid(det.x_min() - pad, det.x_max() + pad, static_cast<std::int64_t>(n)),
          oversample, half};
}

}  // namespace

void EnsembleConfig::validate() const {
  if (n_realizations < 2) {
    throw InvalidArgument("n_realizations must be at least 2, got " +
                          std::to_string(n_realizations));
  }
  if (!(bucket_window.hi >= bucket_window.lo) ||
      bucket_window.lo < object_grid.x_min() - 1e-9 * object_grid.dx() ||
      bucket_window.hi > object_grid.x_max() + 1e-9 * object_grid.dx()) {
    throw InvalidArgument("bucket window must lie within the object grid");
  }
  if (!(detector_aperture >= 0.0) || !std::isfinite(detector_aperture)) {
    throw InvalidArgument("detector aperture must be non-negative");
  }
}

CorrelationProfile to_raw_g2(CorrelationProfile profile) {
  if (profile.normalization == Normalization::RawG2) return profile;
  for (double& v : profile.delta_g2) v += 1.0;
  profile.normalization = Normalization::RawG2;
  return profile;
}

ComplexField draw_source_realization(std::span<const double> intensity, const TransverseGrid& grid,
                                     std::uint64_t realization_index, std::uint64_t master_seed) {
  if (intensity.size() != grid.size()) throw ShapeError("source intensity length mismatch");
  const CounterRng rng(CounterRng::derive(master_seed, realization_index));
  ComplexField field(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (intensity[i] > 0.0) field.amplitude[i] = std::sqrt(intensity[i]) * rng.complex_normal(i);
  }
  return field;
}

ComplexField draw_source_realization(const SourceSpec& source, const TransverseGrid& grid,
                                     std::uint64_t realization_index, std::uint64_t master_seed) {
  std::vector<double> intensity(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) intensity[i] = source.intensity_at(grid.x(i));
  return draw_source_realization(intensity, grid, realization_index, master_seed);
}

TwoArmSimulator::TwoArmSimulator(const TransmissionMask& mask, const OpticalGeometry& geom,
                                 const EnsembleConfig& cfg, double wavelength)
    : mask_(mask),
      cfg_(cfg),
      arm1_(cfg.source_grid, cfg.object_grid, geom.z1, wavelength),
      arm2_([&] {
        cfg.validate();
        geom.validate();
        return FresnelPropagator(cfg.source_grid,
                                 detector_sampling(cfg, geom.z2, wavelength).grid, geom.z2,
                                 wavelength);
      }()) {
  if (!(mask.grid == cfg.object_grid)) throw ShapeError("mask grid differs from object grid");
  const auto sampling = detector_sampling(cfg, geom.z2, wavelength);
  oversample_ = sampling.oversample;
  aperture_half_ = sampling.half_window;

  const auto& g = cfg.object_grid;
  bucket_begin_ = g.size();
  bucket_end_ = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (cfg.bucket_window.contains(g.x(i))) {
      bucket_begin_ = std::min(bucket_begin_, i);
      bucket_end_ = i + 1;
    }
  }
  if (bucket_end_ <= bucket_begin_) bucket_begin_ = bucket_end_ = 0;
}

TwoArmSimulator::Workspace TwoArmSimulator::make_workspace() const {
  Workspace ws;
  ws.fft = arm1_.make_workspace();
  if (arm2_.make_workspace().buffer.size() > ws.fft.buffer.size()) ws.fft = arm2_.make_workspace();
  ws.object_field.resize(arm1_.out_grid().size());
  ws.detector_field.resize(arm2_.out_grid().size());
  return ws;
}

void TwoArmSimulator::simulate(std::span<const Complex> source_field, Workspace& ws,
                               IntensityRecord& out) const {
  arm1_.apply(source_field, ws.object_field, ws.fft);
  double bucket = 0.0;
  for (std::size_t i = bucket_begin_; i < bucket_end_; ++i) {
    bucket += std::norm(ws.object_field[i] * mask_.t[i]);
  }
  out.i1 = bucket * cfg_.object_grid.dx();

  arm2_.apply(source_field, ws.detector_field, ws.fft);
  const std::size_t n_det = cfg_.detector_grid.size();
  out.i2.resize(n_det);
  if (aperture_half_ == 0 && oversample_ == 1) {
    for (std::size_t k = 0; k < n_det; ++k) out.i2[k] = std::norm(ws.detector_field[k]);
    return;
  }
  const std::size_t window = 2 * aperture_half_ + 1;
  for (std::size_t k = 0; k < n_det; ++k) {
    const std::size_t first = k * oversample_;
    double sum = 0.0;
    for (std::size_t j = first; j < first + window; ++j) sum += std::norm(ws.detector_field[j]);
    out.i2[k] = sum / static_cast<double>(window);
  }
}

IntensityRecord TwoArmSimulator::simulate(const ComplexField& source_field) const {
  if (!(source_field.grid == cfg_.source_grid)) throw ShapeError("source field grid mismatch");
  auto ws = make_workspace();
  IntensityRecord rec;
  simulate(source_field.amplitude, ws, rec);
  return rec;
}

IntensityRecord simulate_realization(const ComplexField& src_field, const TransmissionMask& mask,
                                     const OpticalGeometry& geom, const EnsembleConfig& cfg,
                                     double wavelength) {
  return TwoArmSimulator(mask, geom, cfg, wavelength).simulate(src_field);
}

std::size_t jackknife_groups(std::int64_t n_realizations) noexcept {
  if (n_realizations < 2) return 0;
  return std::min<std::size_t>(kMaxJackknifeGroups, static_cast<std::size_t>(n_realizations));
}

CorrelationProfile delta_g2_montecarlo(const TransmissionMask& mask, const SourceSpec& source,
                                       const OpticalGeometry& geom, const EnsembleConfig& cfg,
                                       Parallelism par) {
  cfg.validate();
  geom.validate();
  const TwoArmSimulator sim(mask, geom, cfg, source.wavelength());

  const auto& sg = cfg.source_grid;
  std::vector<double> source_intensity(sg.size());
  for (std::size_t i = 0; i < sg.size(); ++i) source_intensity[i] = source.intensity_at(sg.x(i));

  const auto n = static_cast<std::size_t>(cfg.n_realizations);
  const std::size_t m = cfg.detector_grid.size();
  std::vector<double> i1(n);
  std::vector<double> i2(n * m);

  parallel_for_blocks(n, par, [&](std::size_t begin, std::size_t end, std::size_t) {
    auto ws = sim.make_workspace();
    IntensityRecord rec;
    for (std::size_t r = begin; r < end; ++r) {
      const auto field = draw_source_realization(source_intensity, sg, r, cfg.master_seed);
      sim.simulate(field.amplitude, ws, rec);
      i1[r] = rec.i1;
      std::copy(rec.i2.begin(), rec.i2.end(), i2.begin() + static_cast<std::ptrdiff_t>(r * m));
    }
  });

  if (std::all_of(i1.begin(), i1.end(), [](double v) { return v == 0.0; })) {
    throw DegenerateStatistics("bucket detector is dark in every realization");
  }

  // Two-pass moments: fluctuations about the ensemble means, summed per
  // jackknife group in realization order.
  const std::size_t groups = jackknife_groups(cfg.n_realizations);
  std::vector<std::size_t> group_begin(groups + 1);
  for (std::size_t g = 0; g <= groups; ++g) group_begin[g] = n * g / groups;

  double mean1 = 0.0;
  for (double v : i1) mean1 += v;
  mean1 /= static_cast<double>(n);
  std::vector<double> s1(groups, 0.0);
  for (std::size_t g = 0; g < groups; ++g) {
    for (std::size_t r = group_begin[g]; r < group_begin[g + 1]; ++r) s1[g] += i1[r] - mean1;
  }
  double total1 = 0.0;
  for (double v : s1) total1 += v;

  CorrelationProfile profile;
  profile.x2 = cfg.detector_grid.coordinates();
  profile.delta_g2.assign(m, 0.0);
  profile.std_err.assign(m, 0.0);
  profile.n_realizations = cfg.n_realizations;
  profile.normalization = Normalization::Fluctuation;
  profile.error_method = "jackknife-" + std::to_string(groups);

  const auto estimate = [](double count, double sum1, double sum2, double sum12, double base1,
                           double base2) {
    const double cov = (sum12 - sum1 * sum2 / count) / (count - 1.0);
    const double m1 = base1 + sum1 / count;
    const double m2 = base2 + sum2 / count;
    return cov / (m1 * m2);
  };

  parallel_for_blocks(m, par, [&](std::size_t begin, std::size_t end, std::size_t) {
    std::vector<double> s2(groups);
    std::vector<double> s12(groups);
    std::vector<double> theta(groups);
    for (std::size_t k = begin; k < end; ++k) {
      double mean2 = 0.0;
      for (std::size_t r = 0; r < n; ++r) mean2 += i2[r * m + k];
      mean2 /= static_cast<double>(n);
      if (mean2 == 0.0) continue;  // dark detector sample: no defined correlation

      double total2 = 0.0;
      double total12 = 0.0;
      for (std::size_t g = 0; g < groups; ++g) {
        double a = 0.0;
        double b = 0.0;
        for (std::size_t r = group_begin[g]; r < group_begin[g + 1]; ++r) {
          const double d2 = i2[r * m + k] - mean2;
          a += d2;
          b += (i1[r] - mean1) * d2;
        }
        s2[g] = a;
        s12[g] = b;
        total2 += a;
        total12 += b;
      }
      profile.delta_g2[k] =
          estimate(static_cast<double>(n), total1, total2, total12, mean1, mean2);

      double theta_mean = 0.0;
      for (std::size_t g = 0; g < groups; ++g) {
        const double count = static_cast<double>(n - (group_begin[g + 1] - group_begin[g]));
        theta[g] = estimate(count, total1 - s1[g], total2 - s2[g], total12 - s12[g], mean1, mean2);
        theta_mean += theta[g];
      }
      theta_mean /= static_cast<double>(groups);
      double ss = 0.0;
      for (double t : theta) ss += (t - theta_mean) * (t - theta_mean);
      profile.std_err[k] = std::sqrt(ss * static_cast<double>(groups - 1) / static_cast<double>(groups));
    }
  });
  return profile;
}

}  // namespace ghostsim
