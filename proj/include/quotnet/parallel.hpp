#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace quotnet {

// Runs fn(i) for i in [0, count) on up to `threads` workers over contiguous
// index chunks. Workers must write only to index-addressed slots; callers do
// any reduction afterwards in index order, so results never depend on the
// thread count.
template <typename F>
void parallel_for(std::size_t count, int threads, F&& fn) {
  if (count == 0) return;
  const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  const std::size_t nth =
      std::min({static_cast<std::size_t>(std::max(threads, 1)), hw, count});
  if (nth <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t chunk = (count + nth - 1) / nth;
  std::vector<std::thread> pool;
  pool.reserve(nth);
  for (std::size_t t = 0; t < nth; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace quotnet
