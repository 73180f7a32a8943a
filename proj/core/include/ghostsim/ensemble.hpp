#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ghostsim/field.hpp"
#include "ghostsim/fresnel.hpp"
#include "ghostsim/grid.hpp"
#include "ghostsim/mask.hpp"
#include "ghostsim/parallel.hpp"
#include "ghostsim/source.hpp"

namespace ghostsim {

/// Closed interval [lo, hi] in meters.
struct Interval {
  double lo;
  double hi;

  bool contains(double x) const noexcept { return x >= lo && x <= hi; }
  bool operator==(const Interval&) const = default;
};

struct EnsembleConfig {
  std::int64_t n_realizations = 2;
  std::uint64_t master_seed = 0;
  TransverseGrid source_grid;
  TransverseGrid object_grid;
  TransverseGrid detector_grid;
  /// Region of the object plane integrated by the bucket detector.
  Interval bucket_window;
  /// Width of the averaging window around each reference-detector sample (0 = point).
  double detector_aperture = 0.0;

  /// Throws InvalidArgument on n_realizations < 2, a bucket window outside the
  /// object grid or a negative aperture.
  void validate() const;
};

/// Intensities seen by the two detectors in one realization.
struct IntensityRecord {
  double i1 = 0.0;          ///< bucket
  std::vector<double> i2;   ///< reference detector, one per detector-grid sample
};

enum class Normalization {
  Fluctuation,  ///< cov(I1, I2) / (<I1><I2>)
  RawG2,        ///< 1 + fluctuation (Gaussian moment theorem)
};

struct CorrelationProfile {
  std::vector<double> x2;
  std::vector<double> delta_g2;
  std::vector<double> std_err;
  std::int64_t n_realizations = 0;
  Normalization normalization = Normalization::Fluctuation;
  std::string error_method;

  std::size_t size() const noexcept { return x2.size(); }
};

/// Same profile expressed as raw g2 = 1 + delta_g2.
CorrelationProfile to_raw_g2(CorrelationProfile profile);

/// One delta-correlated thermal source realization: amplitude_i = sqrt(I_s(x_i)) g_i
/// with g_i unit-variance circular complex Gaussians that depend only on
/// (master_seed, realization_index, i).
ComplexField draw_source_realization(const SourceSpec& source, const TransverseGrid& grid,
                                     std::uint64_t realization_index, std::uint64_t master_seed);

/// Same, for a profile already sampled on `grid`.
ComplexField draw_source_realization(std::span<const double> intensity, const TransverseGrid& grid,
                                     std::uint64_t realization_index, std::uint64_t master_seed);

/// Both arms for a fixed scenario, with propagators prepared once.
class TwoArmSimulator {
 public:
  TwoArmSimulator(const TransmissionMask& mask, const OpticalGeometry& geom,
                  const EnsembleConfig& cfg, double wavelength);

  /// Scratch buffers for one concurrent caller.
  struct Workspace {
    FresnelPropagator::Workspace fft;
    std::vector<Complex> object_field;
    std::vector<Complex> detector_field;
  };
  Workspace make_workspace() const;

  void simulate(std::span<const Complex> source_field, Workspace& ws, IntensityRecord& out) const;
  IntensityRecord simulate(const ComplexField& source_field) const;

  const EnsembleConfig& config() const noexcept { return cfg_; }

 private:
  TransmissionMask mask_;
  EnsembleConfig cfg_;
  FresnelPropagator arm1_;
  FresnelPropagator arm2_;
  std::size_t oversample_ = 1;      // fine samples per detector step
  std::size_t aperture_half_ = 0;   // half window, in fine samples
  std::size_t bucket_begin_ = 0;
  std::size_t bucket_end_ = 0;
};

/// Propagates `src_field` through both arms and records the two intensities.
IntensityRecord simulate_realization(const ComplexField& src_field, const TransmissionMask& mask,
                                     const OpticalGeometry& geom, const EnsembleConfig& cfg,
                                     double wavelength);

/// Monte Carlo estimate of delta_g2(x2) = cov(i1, i2(x2)) / (<i1><i2(x2)>), with
/// delete-a-group jackknife standard errors. Bit-identical for any worker count.
CorrelationProfile delta_g2_montecarlo(const TransmissionMask& mask, const SourceSpec& source,
                                       const OpticalGeometry& geom, const EnsembleConfig& cfg,
                                       Parallelism par = {});

/// Number of jackknife groups used for n realizations.
std::size_t jackknife_groups(std::int64_t n_realizations) noexcept;

}  // namespace ghostsim
