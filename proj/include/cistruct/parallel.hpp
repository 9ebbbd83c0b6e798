// SPDX-License-Identifier: MIT
// Minimal deterministic work-sharing helper: runs f(i) for i in [0, n) on
// `workers` threads.  Results must be written to pre-sized slots so that
// output order is independent of scheduling.

#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cistruct {

template <typename F>
void parallel_for(int n, int workers, F&& f) {
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) f(i, /*worker=*/0);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto run = [&](int worker) {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        f(i, worker);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  int count = std::min(workers, n);
  pool.reserve(count);
  for (int w = 0; w < count; ++w) pool.emplace_back(run, w);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace cistruct
