#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ghostsim {

/// Worker count for the embarrassingly parallel loops. Results never depend on it.
struct Parallelism {
  unsigned workers = 1;
};

/// Calls `body(begin, end, worker)` on contiguous, disjoint index blocks covering
/// [0, count). Blocks are assigned statically so each worker sees a fixed range.
/// The first exception thrown by any worker is rethrown on the calling thread.
template <typename Body>
void parallel_for_blocks(std::size_t count, Parallelism par, Body&& body) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(par.workers, count));
  if (workers <= 1) {
    if (count > 0) body(std::size_t{0}, count, std::size_t{0});
    return;
  }

  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = count * w / workers;
    const std::size_t end = count * (w + 1) / workers;
    threads.emplace_back([&, begin, end, w] {
      try {
        body(begin, end, w);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace ghostsim
