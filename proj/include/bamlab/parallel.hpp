#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bam {

inline unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Runs body(i) for i in [0, n) on `workers` threads.  Work items are
/// claimed dynamically, so body must write only to slot i of any shared
/// output.  The first exception thrown by a body is rethrown.
template <class Body>
void parallel_for(std::size_t n, unsigned workers, Body&& body) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace bam
