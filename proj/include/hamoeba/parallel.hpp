#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace hamoeba {

/// Number of worker threads used by cloud-scale loops. 0 selects the
/// hardware concurrency.
void set_worker_count(unsigned workers);
unsigned worker_count();

/// Runs body(lo, hi, block) over contiguous blocks covering [0, n). The
/// number of blocks depends on the worker count, so callers must combine
/// per-block results with an order-independent reduction.
template <class Body>
void parallel_blocks(std::size_t n, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(n / 256, 1));
  if (workers <= 1) {
    body(std::size_t{0}, n, std::size_t{0});
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t lo = n * w / workers;
      const std::size_t hi = n * (w + 1) / workers;
      threads.emplace_back([&, w, lo, hi] {
        try {
          body(lo, hi, w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  // Lowest block first, so the reported failure does not depend on timing.
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// Runs body(i) for i in [0, n). Work is split into contiguous blocks; callers
/// write results into slot i so the outcome is independent of the split.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  parallel_blocks(n, [&](std::size_t lo, std::size_t hi, std::size_t) {
    for (std::size_t i = lo; i < hi; ++i) body(i);
  });
}

}  // namespace hamoeba
