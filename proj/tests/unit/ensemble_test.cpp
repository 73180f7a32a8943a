#include <gtest/gtest.h>

#include <cmath>

#include "ghostsim/error.hpp"
#include "ghostsim/ensemble.hpp"

using namespace ghostsim;

namespace {

constexpr double kLambda = 693e-9;

EnsembleConfig small_config(std::int64_t n, std::uint64_t seed) {
  const auto obj = make_grid(-0.6e-3, 0.6e-3, 256);
  return EnsembleConfig{n, seed, make_grid(-1e-3, 1e-3, 128), obj, make_grid(-0.6e-3, 0.6e-3, 128),
                        Interval{obj.x_min(), obj.x_max()}, 0.0};
}

SourceSpec small_source() { return SourceSpec(kLambda, UniformProfile{1e-3}, 1e-10); }

}  // namespace

TEST(Ensemble, RealizationIsPureFunctionOfSeedAndIndex) {
  const auto cfg = small_config(2, 42);
  const auto a = draw_source_realization(small_source(), cfg.source_grid, 7, 42);
  const auto b = draw_source_realization(small_source(), cfg.source_grid, 7, 42);
  const auto c = draw_source_realization(small_source(), cfg.source_grid, 8, 42);
  EXPECT_EQ(a.amplitude, b.amplitude);
  EXPECT_NE(a.amplitude, c.amplitude);
}

TEST(Ensemble, DarkSourceGivesZeroField) {
  const auto g = make_grid(-1e-3, 1e-3, 16);
  const std::vector<double> dark(g.size(), 0.0);
  for (const auto& a : draw_source_realization(dark, g, 3, 1).amplitude) EXPECT_EQ(a, Complex{});
}

TEST(Ensemble, SourceMoments) {
  const auto g = make_grid(-1e-3, 1e-3, 8);
  const std::vector<double> intensity{0.5, 1.0, 2.0, 1.0, 0.25, 3.0, 1.0, 1.0};
  constexpr int n = 100000;
  std::vector<double> power(g.size(), 0.0);
  std::vector<Complex> mean(g.size(), 0.0);
  for (int r = 0; r < n; ++r) {
    const auto f = draw_source_realization(intensity, g, r, 11);
    for (std::size_t i = 0; i < g.size(); ++i) {
      power[i] += std::norm(f.amplitude[i]) / n;
      mean[i] += f.amplitude[i] / static_cast<double>(n);
    }
  }
  // Means: 16 z-scores (real and imaginary parts) against chi-square(16) at 0.999.
  double chi2 = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(power[i] / intensity[i], 1.0, 0.02);
    const double se = std::sqrt(intensity[i] / 2.0 / n);
    chi2 += std::norm(mean[i]) / (se * se);
  }
  EXPECT_LT(chi2, 39.25);
}

TEST(Ensemble, StreamsIndependentAcrossSeeds) {
  // Per-stream z-scores of the sample mean have unit variance.
  constexpr int n = 4000;
  constexpr int seeds = 500;
  const std::vector<double> intensity(4, 1.0);
  const auto g = make_grid(0.0, 1.0, 4);
  double zz = 0.0;
  for (int s = 0; s < seeds; ++s) {
    std::vector<Complex> sum(4, 0.0);
    for (int r = 0; r < n; ++r) {
      const auto f = draw_source_realization(intensity, g, r, 1000 + s);
      for (std::size_t i = 0; i < 4; ++i) sum[i] += f.amplitude[i];
    }
    for (const auto& v : sum) zz += std::norm(v) / (0.5 * n);
  }
  EXPECT_NEAR(zz / (2.0 * 4 * seeds), 1.0, 0.1);
}

TEST(Ensemble, BucketIntegratesTransmittedPower) {
  const auto cfg = small_config(2, 5);
  const auto src = draw_source_realization(small_source(), cfg.source_grid, 0, 5);
  const OpticalGeometry geom{0.3, 0.3};
  const auto open = simulate_realization(src, TransmissionMask::uniform(cfg.object_grid), geom, cfg, kLambda);
  const double expected = fresnel_propagate(src, 0.3, kLambda, cfg.object_grid).total_power();
  EXPECT_NEAR(open.i1 / expected, 1.0, 1e-12);
  EXPECT_EQ(open.i2.size(), cfg.detector_grid.size());
  const auto dark = simulate_realization(src, TransmissionMask::opaque(cfg.object_grid), geom, cfg, kLambda);
  EXPECT_EQ(dark.i1, 0.0);
}

TEST(Ensemble, Preconditions) {
  const auto cfg = small_config(1, 0);
  EXPECT_THROW(delta_g2_montecarlo(TransmissionMask::uniform(cfg.object_grid), small_source(), {0.3, 0.3}, cfg),
               InvalidArgument);
  const auto ok = small_config(16, 0);
  EXPECT_THROW(delta_g2_montecarlo(TransmissionMask::opaque(ok.object_grid), small_source(), {0.3, 0.3}, ok),
               DegenerateStatistics);
  auto outside = ok;
  outside.bucket_window = {-1.0, 1.0};
  EXPECT_THROW(outside.validate(), InvalidArgument);
}

TEST(Ensemble, NoObjectGivesFlatProfile) {
  const auto cfg = small_config(2000, 9);
  const auto p = delta_g2_montecarlo(TransmissionMask::uniform(cfg.object_grid), small_source(), {0.3, 0.3}, cfg);
  double mean = 0.0;
  for (double v : p.delta_g2) mean += v / static_cast<double>(p.size());
  std::size_t within = 0;
  for (std::size_t i = 0; i < p.size(); ++i) within += std::abs(p.delta_g2[i] - mean) <= 3 * p.std_err[i];
  EXPECT_GE(within, p.size() * 95 / 100);
}

TEST(Ensemble, BitIdenticalAcrossWorkers) {
  const auto cfg = small_config(300, 4);
  const auto mask = TransmissionMask::double_slit(cfg.object_grid, 200e-6, 500e-6);
  const auto one = delta_g2_montecarlo(mask, small_source(), {0.3, 0.3}, cfg, {1});
  for (unsigned w : {2u, 3u, 8u}) {
    const auto many = delta_g2_montecarlo(mask, small_source(), {0.3, 0.3}, cfg, {w});
    EXPECT_EQ(one.delta_g2, many.delta_g2);
    EXPECT_EQ(one.std_err, many.std_err);
  }
}

TEST(Ensemble, StdErrScalesAsInverseRootN) {
  const auto mask = TransmissionMask::double_slit(small_config(2, 0).object_grid, 200e-6, 500e-6);
  const auto a = delta_g2_montecarlo(mask, small_source(), {0.3, 0.3}, small_config(500, 100));
  const auto b = delta_g2_montecarlo(mask, small_source(), {0.3, 0.3}, small_config(2000, 200));
  double sa = 0.0, sb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += a.std_err[i];
    sb += b.std_err[i];
  }
  EXPECT_NEAR(sa / sb, 2.0, 0.4);
}

TEST(Ensemble, PointSourceSiegert) {
  auto cfg = small_config(4000, 21);
  std::vector<double> spike(cfg.source_grid.size(), 0.0);
  spike[cfg.source_grid.size() / 2] = 1.0;
  const SourceSpec point(kLambda, SampledProfile{cfg.source_grid, spike}, 1e-10);
  const auto p = to_raw_g2(delta_g2_montecarlo(TransmissionMask::uniform(cfg.object_grid), point, {0.3, 0.3}, cfg));
  const std::size_t mid = p.size() / 2;
  EXPECT_EQ(p.normalization, Normalization::RawG2);
  EXPECT_NEAR(p.delta_g2[mid], 2.0, 3 * p.std_err[mid]);
}

TEST(Ensemble, JackknifeGroupsBounded) {
  EXPECT_GE(jackknife_groups(2), 2u);
  EXPECT_LE(jackknife_groups(2), 2u);
  EXPECT_LE(jackknife_groups(1000000), 1000000u);
}
