#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ghostsim {

/// Uniformly sampled 1D transverse coordinate axis, in meters.
///
/// Coordinates are always computed as `x_min + i * dx` from the index, never
/// accumulated, so sample i maps to the same value however it is reached.
class TransverseGrid {
 public:
  /// Throws InvalidArgument unless n_points >= 2 and x_max > x_min (both finite).
  TransverseGrid(double x_min, double x_max, std::int64_t n_points);

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  std::size_t size() const noexcept { return n_; }
  double dx() const noexcept { return dx_; }
  double span() const noexcept { return x_max_ - x_min_; }

  double x(std::size_t i) const noexcept { return x_min_ + static_cast<double>(i) * dx_; }

  std::vector<double> coordinates() const;

  /// Index of the sample closest to `x`, clamped to the grid.
  std::size_t nearest_index(double x) const noexcept;

  bool operator==(const TransverseGrid&) const = default;

 private:
  double x_min_;
  double x_max_;
  std::size_t n_;
  double dx_;
};

TransverseGrid make_grid(double x_min, double x_max, std::int64_t n_points);

/// Grid centered on `center` with full width `width` and spacing no larger than `max_dx`.
TransverseGrid make_grid_with_spacing(double center, double width, double max_dx,
                                      std::int64_t min_points = 2);

}  // namespace ghostsim
