#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace ngb {

/// Worker count: NGB_THREADS if set (>=1), else hardware concurrency.
inline int thread_cap() {
  if (const char* env = std::getenv("NGB_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

namespace detail {
inline bool& inside_parallel_region() {
  thread_local bool inside = false;
  return inside;
}
}  // namespace detail

/// Calls f(i) for i in [0, n). Results must be written to pre-sized slots so
/// output order never depends on scheduling. Nested calls run sequentially.
template <class F>
void parallel_for(int n, F&& f) {
  const int workers = std::min(thread_cap(), std::max(n, 1));
  if (workers <= 1 || n <= 1 || detail::inside_parallel_region()) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<int> next{0};
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      detail::inside_parallel_region() = true;
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) f(i);
      detail::inside_parallel_region() = false;
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace ngb
