#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "ghostsim/analytic.hpp"
#include "ghostsim/error.hpp"
#include "ghostsim/kernel.hpp"
#include "ghostsim/metrics.hpp"
#include "ghostsim/scenario.hpp"

using namespace ghostsim;

TEST(Pointlike, EquationOneArithmetic) {
  PointlikeObject two{{-1e-3, 1e-3}, {1.0, 1.0}};
  EXPECT_NEAR(g2_pointlike(two, -1e-3, 1e-15), 3.0, 1e-12);
  EXPECT_NEAR(g2_pointlike(two, 0.5, 1e-15), 2.0, 1e-12);
  EXPECT_NEAR(pointlike_visibility(two, 1e-15), 0.2, 1e-12);
  EXPECT_NEAR(pointlike_visibility({{0.0}, {1.0}}, 1e-15), 1.0 / 3.0, 1e-12);
  PointlikeObject weighted{{0.0, 2e-3, 5e-3}, {0.5, 2.0, 1.0}};
  for (std::size_t j = 0; j < weighted.count(); ++j) {
    EXPECT_NEAR(g2_pointlike(weighted, weighted.feature_positions[j], 1e-15), 3.0 + weighted.feature_weights[j],
                1e-12);
  }
}

TEST(Pointlike, Validation) {
  EXPECT_THROW(PointlikeObject{}.validate(), InvalidArgument);
  EXPECT_THROW((PointlikeObject{{0.0}, {1.0, 2.0}}.validate()), InvalidArgument);
  EXPECT_THROW((PointlikeObject{{0.0}, {-1.0}}.validate()), InvalidArgument);
  EXPECT_THROW((PointlikeObject{{0.0, 1.0}, {0.0, 0.0}}.validate()), InvalidArgument);
}

TEST(Analytic, SpeckleSize) {
  EXPECT_NEAR(predicted_speckle_size(SourceSpec(692.9e-9, UniformProfile{0.835e-3}, 1e-10), 1.7), 0.705e-3,
              0.001e-3);
  EXPECT_NEAR(predicted_speckle_size(SourceSpec(693e-9, UniformProfile{6e-3}, 1e-10), 0.3), 17.3e-6, 0.05e-6);
  EXPECT_THROW(predicted_speckle_size(SourceSpec(693e-9, GaussianProfile{6e-3}, 1e-10), 0.3), UnsupportedProfile);
}

TEST(Analytic, DeltaFeatureReproducesKernel) {
  const SourceSpec s(693e-9, UniformProfile{6e-3}, 1e-10);
  const OpticalGeometry geom{0.3, 0.3};
  const auto g = make_grid(-0.2e-3, 0.2e-3, 401);
  std::vector<Complex> t(g.size(), 0.0);
  t[g.nearest_index(0.0)] = 1.0;
  const TransmissionMask mask(g, t);
  const auto x2 = make_grid(-60e-6, 60e-6, 121);
  const auto p = delta_g2_analytic(mask, s, geom, x2);
  const auto peak = std::max_element(p.delta_g2.begin(), p.delta_g2.end()) - p.delta_g2.begin();
  EXPECT_EQ(p.x2[peak], x2.x(x2.nearest_index(0.0)));
  const double ratio = p.delta_g2[peak] / std::norm(mutual_coherence_kernel(0.0, 0.0, s, geom));
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_NEAR(p.delta_g2[i], ratio * std::norm(mutual_coherence_kernel(0.0, p.x2[i], s, geom)),
                1e-9 * p.delta_g2[peak]);
  }
}

TEST(Analytic, Preconditions) {
  const SourceSpec s(693e-9, UniformProfile{6e-3}, 1e-10);
  const auto coarse = make_grid(-1e-3, 1e-3, 21);
  EXPECT_THROW(delta_g2_analytic(TransmissionMask::uniform(coarse), s, {0.3, 0.3}, coarse), InvalidArgument);
  const auto fine = make_grid(-0.1e-3, 0.1e-3, 101);
  EXPECT_THROW(delta_g2_analytic(TransmissionMask::opaque(fine), s, {0.3, 0.3}, fine), DegenerateStatistics);
}

class Fig3Analytic : public ::testing::Test {
 protected:
  static CorrelationProfile at(double z2) {
    const ScenarioConfig cfg = parse_scenario(preset_text("fig3"));
    return delta_g2_analytic(cfg.make_mask(), cfg.source(), {cfg.geometry.z1, z2}, cfg.detector_grid.grid());
  }
};

TEST_F(Fig3Analytic, FocusSharpestAndResolved) {
  const auto focus = at(0.3);
  for (double v : focus.delta_g2) EXPECT_GE(v, 0.0);
  const double max_focus = *std::max_element(focus.delta_g2.begin(), focus.delta_g2.end());
  const double m_focus = second_moment(focus.x2, focus.delta_g2);
  for (double z2 : {0.2, 0.4}) {
    const auto off = at(z2);
    EXPECT_LT(*std::max_element(off.delta_g2.begin(), off.delta_g2.end()), max_focus);
    EXPECT_GT(second_moment(off.x2, off.delta_g2), m_focus);
  }
  // Two peaks at the slit centers, no magnification.
  const auto peaks = find_peaks(focus.x2, focus.delta_g2, 0.0);
  ASSERT_GE(peaks.size(), 2u);
  const double step = focus.x2[1] - focus.x2[0];
  const double lo = std::min(peaks[0].position, peaks[1].position);
  const double hi = std::max(peaks[0].position, peaks[1].position);
  EXPECT_NEAR(lo, -100e-6, step);
  EXPECT_NEAR(hi, 100e-6, step);
  EXPECT_NEAR(hi - lo, 200e-6, step);
  // Each slit image is close to the 100 um slit width (edges blurred by ~17 um).
  EXPECT_NEAR(peaks[0].fwhm, 100e-6, 20e-6);
}
