#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace rmds::detail {

inline unsigned worker_count(std::size_t jobs) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return static_cast<unsigned>(std::min<std::size_t>(hw, jobs));
}

// Runs fn(block_index, begin, end) over [0, n) split into fixed-size blocks.
// The block layout is independent of the thread count, so any reduction that
// combines per-block results in block order is deterministic on every machine.
template <class F>
void parallel_blocks(int n, int block_size, F&& fn) {
  if (n <= 0) return;
  const int n_blocks = (n + block_size - 1) / block_size;
  const unsigned workers = worker_count(static_cast<std::size_t>(n_blocks));
  if (workers <= 1) {
    for (int b = 0; b < n_blocks; ++b) {
      fn(b, b * block_size, std::min(n, (b + 1) * block_size));
    }
    return;
  }
  std::atomic<int> next{0};
  auto run = [&]() {
    for (;;) {
      const int b = next.fetch_add(1);
      if (b >= n_blocks) return;
      fn(b, b * block_size, std::min(n, (b + 1) * block_size));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(run);
  for (auto& t : pool) t.join();
}

// Per-index convenience: fn(i) must only touch state owned by index i.
template <class F>
void parallel_for(int n, F&& fn) {
  parallel_blocks(n, 16, [&](int, int begin, int end) {
    for (int i = begin; i < end; ++i) fn(i);
  });
}

}  // namespace rmds::detail
