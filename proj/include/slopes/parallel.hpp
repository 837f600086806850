#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "slopes/rational.hpp"

namespace slopes {

/// Knobs shared by every exhaustive scan.
struct ScanOptions {
  i64 cap = 10'000'000;  ///< maximum number of enumerated items before EnumerationTooLarge
  unsigned workers = 0;  ///< 0 means std::thread::hardware_concurrency()

  unsigned resolved_workers() const {
    if (workers > 0) return workers;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
  }
};

/// Calls f(i) for every i in [0, count). Work is split into contiguous chunks;
/// f must only write to slots owned by i, so results never depend on the worker count.
/// The first exception thrown by any f is rethrown after all workers join.
template <class F>
void parallel_for(std::size_t count, unsigned workers, F&& f) {
  if (workers <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  const std::size_t chunk = std::max<std::size_t>(1, count / (workers * 8));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    while (true) {
      std::size_t begin = next.fetch_add(chunk);
      if (begin >= count) return;
      std::size_t end = std::min(count, begin + chunk);
      try {
        for (std::size_t i = begin; i < end; ++i) f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

/// Index-ordered map: out[i] = f(i).
template <class R, class F>
std::vector<R> parallel_map(std::size_t count, unsigned workers, F&& f) {
  std::vector<R> out(count);
  parallel_for(count, workers, [&](std::size_t i) { out[i] = f(i); });
  return out;
}

}  // namespace slopes
