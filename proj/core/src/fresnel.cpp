#include "ghostsim/fresnel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fft.hpp"
#include "ghostsim/error.hpp"

namespace ghostsim {
namespace {

constexpr double kPi = std::numbers::pi;

void validate_arm(double distance, double wavelength) {
  if (!(distance > 0.0) || !std::isfinite(distance)) {
    throw InvalidArgument("propagation distance must be positive");
  }
  if (!(wavelength > 0.0) || !std::isfinite(wavelength)) {
    throw InvalidArgument("wavelength must be positive");
  }
}

Complex unit_phase(double phase) { return {std::cos(phase), std::sin(phase)}; }

// e^{-i pi/4} / sqrt(lambda z)
Complex fresnel_prefactor(double distance, double wavelength) {
  return unit_phase(-0.25 * kPi) / std::sqrt(wavelength * distance);
}

ComplexField propagate_direct(const ComplexField& field, double distance, double wavelength,
                              const TransverseGrid& out_grid) {
  const auto& in = field.grid;
  const double inv_lz = 1.0 / (wavelength * distance);
  const Complex scale = fresnel_prefactor(distance, wavelength) * in.dx();
  ComplexField out(out_grid);
  for (std::size_t k = 0; k < out_grid.size(); ++k) {
    const double y = out_grid.x(k);
    Complex sum = 0.0;
    for (std::size_t i = 0; i < in.size(); ++i) {
      const Complex a = field.amplitude[i];
      if (a == Complex{}) continue;
      const double d = in.x(i) - y;
      sum += a * unit_phase(kPi * d * d * inv_lz);
    }
    out.amplitude[k] = scale * sum;
  }
  return out;
}

}  // namespace

double max_fresnel_spacing(double span, double distance, double wavelength) noexcept {
  return wavelength * distance / (2.0 * span);
}

void check_fresnel_sampling(const TransverseGrid& in, const TransverseGrid& out, double distance,
                            double wavelength) {
  validate_arm(distance, wavelength);
  const double span = std::max(in.x_max(), out.x_max()) - std::min(in.x_min(), out.x_min());
  const double limit = max_fresnel_spacing(span, distance, wavelength);
  if (in.dx() > limit * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "Fresnel chirp undersampled: input spacing " << in.dx() << " m exceeds lambda z / (2 span) = "
        << limit << " m (z = " << distance << " m, span = " << span << " m)";
    throw AliasingError(msg.str());
  }
}

// Chirp factorization of (x_i - y_k)^2 with x_i = x0 + i dx, y_k = y0 + k dy:
//   pi a (x_i - y_k)^2 = P_i + Q_k + pi b (k - i)^2,   a = 1/(lambda z), b = a dx dy
//   P_i = pi a (x_i^2 - 2 y0 i dx - i^2 dx dy)
//   Q_k = pi a (y_k^2 - 2 x0 k dy - k^2 dx dy - 2 x0 y0)
// so the sum over i is a linear convolution with w(m) = exp(i pi b m^2), done by FFT.
struct FresnelPropagator::Impl {
  TransverseGrid in;
  TransverseGrid out;
  std::shared_ptr<const detail::FftPlan> fft;
  std::vector<Complex> pre;
  std::vector<Complex> post;
  std::vector<Complex> kernel_hat;
};

FresnelPropagator::FresnelPropagator(const TransverseGrid& in_grid, const TransverseGrid& out_grid,
                                     double distance, double wavelength) {
  check_fresnel_sampling(in_grid, out_grid, distance, wavelength);

  const std::size_t n = in_grid.size();
  const std::size_t m = out_grid.size();
  const std::size_t len = detail::good_fft_size(n + m - 1);

  const double a = 1.0 / (wavelength * distance);
  const double dx = in_grid.dx();
  const double dy = out_grid.dx();
  const double x0 = in_grid.x_min();
  const double y0 = out_grid.x_min();
  const double dxdy = dx * dy;

  auto impl = std::make_unique<Impl>(Impl{in_grid, out_grid, detail::FftPlan::get(len), {}, {}, {}});

  impl->pre.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double di = static_cast<double>(i);
    const double x = in_grid.x(i);
    impl->pre[i] = unit_phase(kPi * a * (x * x - 2.0 * y0 * di * dx - di * di * dxdy));
  }

  const Complex scale = fresnel_prefactor(distance, wavelength) * dx / static_cast<double>(len);
  impl->post.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double dk = static_cast<double>(k);
    const double y = out_grid.x(k);
    impl->post[k] =
        scale * unit_phase(kPi * a * (y * y - 2.0 * x0 * dk * dy - dk * dk * dxdy - 2.0 * x0 * y0));
  }

  std::vector<Complex> kernel(len, 0.0);
  const double b = kPi * a * dxdy;
  for (std::size_t j = 0; j < m; ++j) {
    const double dj = static_cast<double>(j);
    kernel[j] = unit_phase(b * dj * dj);
  }
  for (std::size_t j = 1; j < n; ++j) {
    const double dj = static_cast<double>(j);
    kernel[len - j] = unit_phase(b * dj * dj);
  }
  impl->fft->forward(kernel.data());
  impl->kernel_hat = std::move(kernel);

  impl_ = std::move(impl);
}

FresnelPropagator::~FresnelPropagator() = default;
FresnelPropagator::FresnelPropagator(FresnelPropagator&&) noexcept = default;
FresnelPropagator& FresnelPropagator::operator=(FresnelPropagator&&) noexcept = default;

const TransverseGrid& FresnelPropagator::in_grid() const noexcept { return impl_->in; }
const TransverseGrid& FresnelPropagator::out_grid() const noexcept { return impl_->out; }

FresnelPropagator::Workspace FresnelPropagator::make_workspace() const {
  return Workspace{std::vector<Complex>(impl_->fft->size())};
}

void FresnelPropagator::apply(std::span<const Complex> in, std::span<Complex> out,
                              Workspace& ws) const {
  const Impl& p = *impl_;
  if (in.size() != p.pre.size() || out.size() != p.post.size()) {
    throw ShapeError("propagator input/output length mismatch");
  }
  auto& buf = ws.buffer;
  buf.assign(p.fft->size(), Complex{});
  for (std::size_t i = 0; i < in.size(); ++i) buf[i] = in[i] * p.pre[i];
  p.fft->forward(buf.data());
  for (std::size_t j = 0; j < buf.size(); ++j) buf[j] *= p.kernel_hat[j];
  p.fft->inverse(buf.data());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = buf[k] * p.post[k];
}

ComplexField FresnelPropagator::operator()(const ComplexField& field) const {
  if (!(field.grid == impl_->in)) throw ShapeError("field grid differs from propagator input grid");
  ComplexField out(impl_->out);
  auto ws = make_workspace();
  apply(field.amplitude, out.amplitude, ws);
  return out;
}

ComplexField fresnel_propagate(const ComplexField& field, double distance, double wavelength,
                               const TransverseGrid& out_grid, PropagationMethod method) {
  check_fresnel_sampling(field.grid, out_grid, distance, wavelength);
  if (method == PropagationMethod::Automatic) {
    method = field.grid.size() * out_grid.size() <= (std::size_t{1} << 16)
                 ? PropagationMethod::Direct
                 : PropagationMethod::Fast;
  }
  if (method == PropagationMethod::Direct) {
    return propagate_direct(field, distance, wavelength, out_grid);
  }
  return FresnelPropagator(field.grid, out_grid, distance, wavelength)(field);
}

}  // namespace ghostsim
