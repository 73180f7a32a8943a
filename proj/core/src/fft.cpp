#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "ghostsim/error.hpp"

namespace ghostsim::detail {
namespace {

// The FFTW planner is not thread-safe; plan creation and destruction go through this lock.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n) {
  auto* buffer = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (buffer == nullptr) throw Error("FFTW allocation failed");
  const int len = static_cast<int>(n);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  forward_ = fftw_plan_dft_1d(len, buffer, buffer, FFTW_FORWARD, flags);
  inverse_ = fftw_plan_dft_1d(len, buffer, buffer, FFTW_BACKWARD, flags);
  fftw_free(buffer);
  if (forward_ == nullptr || inverse_ == nullptr) throw Error("FFTW planning failed");
}

FftPlan::~FftPlan() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_));
}

std::shared_ptr<const FftPlan> FftPlan::get(std::size_t n) {
  // The mutex must be constructed before (and so destroyed after) the cache.
  auto& mutex = planner_mutex();
  static std::map<std::size_t, std::shared_ptr<const FftPlan>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::shared_ptr<const FftPlan> plan(new FftPlan(n));
  cache.emplace(n, plan);
  return plan;
}

void FftPlan::forward(Complex* data) const noexcept {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(static_cast<fftw_plan>(forward_), p, p);
}

void FftPlan::inverse(Complex* data) const noexcept {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(static_cast<fftw_plan>(inverse_), p, p);
}

std::size_t good_fft_size(std::size_t n) noexcept {
  if (n <= 1) return 1;
  for (std::size_t m = n;; ++m) {
    std::size_t r = m;
    for (std::size_t p : {2u, 3u, 5u, 7u}) {
      while (r % p == 0) r /= p;
    }
    if (r == 1) return m;
  }
}

}  // namespace ghostsim::detail
