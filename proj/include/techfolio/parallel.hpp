#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace techfolio {

inline int resolve_threads(int n_threads) {
  if (n_threads > 0) return n_threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Run fn(first, last) over [0, count) in contiguous chunks. Each chunk writes
// disjoint output slots, so the merged result does not depend on the thread
// count.
inline void parallel_chunks(std::size_t count, int n_threads,
                            const std::function<void(std::size_t, std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(resolve_threads(n_threads)),
                            count ? count : 1);
  if (workers <= 1) {
    fn(0, count);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t first = w * chunk;
    const std::size_t last = std::min(count, first + chunk);
    if (first >= last) break;
    pool.emplace_back([&fn, first, last] { fn(first, last); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace techfolio
