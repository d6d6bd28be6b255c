#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace fqb {

/// Worker count from FQB_WORKERS, else the hardware concurrency (at least 1).
unsigned default_workers();

/// Runs job(i) for i in [0, count) on up to `workers` threads. Jobs write into
/// their own slot, so the result order never depends on scheduling. The first
/// exception thrown by any job is rethrown after all workers join.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& job) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    const unsigned n_threads = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            job(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace fqb
