#include "ghostsim/field.hpp"

#include "ghostsim/error.hpp"

namespace ghostsim {

ComplexField::ComplexField(TransverseGrid g) : grid(g), amplitude(g.size()) {}

ComplexField::ComplexField(TransverseGrid g, std::vector<Complex> a)
    : grid(g), amplitude(std::move(a)) {
  if (amplitude.size() != grid.size()) {
    throw ShapeError("field has " + std::to_string(amplitude.size()) + " samples but grid has " +
                     std::to_string(grid.size()));
  }
}

double ComplexField::total_power() const noexcept {
  double sum = 0.0;
  for (const auto& a : amplitude) sum += std::norm(a);
  return sum * grid.dx();
}

std::vector<double> ComplexField::intensity() const {
  std::vector<double> out(amplitude.size());
  for (std::size_t i = 0; i < amplitude.size(); ++i) out[i] = std::norm(amplitude[i]);
  return out;
}

}  // namespace ghostsim
