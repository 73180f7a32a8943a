#include "ghostsim/mask.hpp"

#include <cmath>

#include "ghostsim/error.hpp"

namespace ghostsim {
namespace {

void add_window(const TransverseGrid& grid, std::vector<Complex>& t, double center, double width) {
  const double half = 0.5 * width + 1e-9 * grid.dx();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (std::abs(grid.x(i) - center) <= half) t[i] = 1.0;
  }
}

}  // namespace

TransmissionMask::TransmissionMask(TransverseGrid g, std::vector<Complex> samples,
                                   std::vector<MaskFeature> f)
    : grid(g), t(std::move(samples)), features(std::move(f)) {
  if (t.size() != grid.size()) throw ShapeError("mask length does not match its grid");
  for (const auto& v : t) {
    if (!(std::abs(v) <= 1.0 + 1e-12)) throw InvalidArgument("mask transmission exceeds 1");
  }
}

TransmissionMask TransmissionMask::uniform(const TransverseGrid& grid) {
  return TransmissionMask(grid, std::vector<Complex>(grid.size(), 1.0),
                          {{0.5 * (grid.x_min() + grid.x_max()), grid.span()}});
}

TransmissionMask TransmissionMask::opaque(const TransverseGrid& grid) {
  return TransmissionMask(grid, std::vector<Complex>(grid.size(), 0.0));
}

TransmissionMask TransmissionMask::double_slit(const TransverseGrid& grid, double width,
                                               double center_separation, double center) {
  if (!(width > 0.0) || !(center_separation > 0.0)) {
    throw InvalidArgument("double slit width and separation must be positive");
  }
  if (width > center_separation) throw InvalidArgument("double slit windows overlap");
  std::vector<Complex> t(grid.size(), 0.0);
  const double c1 = center - 0.5 * center_separation;
  const double c2 = center + 0.5 * center_separation;
  add_window(grid, t, c1, width);
  add_window(grid, t, c2, width);
  return TransmissionMask(grid, std::move(t), {{c1, width}, {c2, width}});
}

TransmissionMask TransmissionMask::pinhole_pair(const TransverseGrid& grid, double d1, double d2,
                                                double separation, double center) {
  if (!(d1 > 0.0) || !(d2 > 0.0) || !(separation > 0.0)) {
    throw InvalidArgument("pinhole diameters and separation must be positive");
  }
  if (0.5 * (d1 + d2) > separation) throw InvalidArgument("pinholes overlap");
  std::vector<Complex> t(grid.size(), 0.0);
  const double c1 = center - 0.5 * separation;
  const double c2 = center + 0.5 * separation;
  add_window(grid, t, c1, d1);
  add_window(grid, t, c2, d2);
  return TransmissionMask(grid, std::move(t), {{c1, d1}, {c2, d2}});
}

double TransmissionMask::transmitted_area() const noexcept {
  double sum = 0.0;
  for (const auto& v : t) sum += std::norm(v);
  return sum * grid.dx();
}

ComplexField apply_mask(const ComplexField& field, const TransmissionMask& mask) {
  if (!(field.grid == mask.grid)) throw ShapeError("field and mask grids differ");
  ComplexField out(field.grid);
  for (std::size_t i = 0; i < out.amplitude.size(); ++i) {
    out.amplitude[i] = field.amplitude[i] * mask.t[i];
  }
  return out;
}

}  // namespace ghostsim
