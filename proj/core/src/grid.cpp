#include "ghostsim/grid.hpp"

#include <cmath>
#include <string>

#include "ghostsim/error.hpp"

namespace ghostsim {

TransverseGrid::TransverseGrid(double x_min, double x_max, std::int64_t n_points) {
  if (n_points < 2) {
    throw InvalidArgument("grid needs at least 2 points, got " + std::to_string(n_points));
  }
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min)) {
    throw InvalidArgument("grid requires finite x_max > x_min");
  }
  x_min_ = x_min;
  x_max_ = x_max;
  n_ = static_cast<std::size_t>(n_points);
  dx_ = (x_max - x_min) / static_cast<double>(n_points - 1);
}

std::vector<double> TransverseGrid::coordinates() const {
  std::vector<double> xs(n_);
  for (std::size_t i = 0; i < n_; ++i) xs[i] = x(i);
  return xs;
}

std::size_t TransverseGrid::nearest_index(double x) const noexcept {
  const double u = std::round((x - x_min_) / dx_);
  if (!(u > 0.0)) return 0;
  if (u >= static_cast<double>(n_ - 1)) return n_ - 1;
  return static_cast<std::size_t>(u);
}

TransverseGrid make_grid(double x_min, double x_max, std::int64_t n_points) {
  return TransverseGrid(x_min, x_max, n_points);
}

TransverseGrid make_grid_with_spacing(double center, double width, double max_dx,
                                      std::int64_t min_points) {
  if (!(width > 0.0) || !(max_dx > 0.0)) {
    throw InvalidArgument("grid width and spacing must be positive");
  }
  const auto intervals = static_cast<std::int64_t>(std::ceil(width / max_dx));
  const std::int64_t n = std::max<std::int64_t>(min_points, intervals + 1);
  return TransverseGrid(center - 0.5 * width, center + 0.5 * width, n);
}

}  // namespace ghostsim
