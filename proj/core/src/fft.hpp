#pragma once

#include <cstddef>
#include <memory>

#include "ghostsim/field.hpp"

namespace ghostsim::detail {

/// In-place complex FFT of a fixed length backed by FFTW. Plans are shared and
/// immutable; executing one is thread-safe.
class FftPlan {
 public:
  static std::shared_ptr<const FftPlan> get(std::size_t n);

  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::size_t size() const noexcept { return n_; }

  /// X_k = sum_j x_j exp(-2 pi i j k / n)
  void forward(Complex* data) const noexcept;
  /// Unnormalized inverse (exp(+2 pi i j k / n)).
  void inverse(Complex* data) const noexcept;

 private:
  explicit FftPlan(std::size_t n);

  std::size_t n_;
  void* forward_;
  void* inverse_;
};

/// Smallest n' >= n whose prime factors are all in {2, 3, 5, 7}.
std::size_t good_fft_size(std::size_t n) noexcept;

}  // namespace ghostsim::detail
