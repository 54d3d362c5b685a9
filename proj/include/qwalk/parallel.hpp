#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace qwalk {

// Runs body(0..n-1) on `workers` threads. Callers store results by index, so
// output ordering does not depend on scheduling.
inline void parallel_for_index(int n, int workers, const std::function<void(int)>& body) {
  workers = std::max(1, workers);
  if (workers == 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace qwalk
