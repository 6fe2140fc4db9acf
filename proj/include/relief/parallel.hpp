#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace relief {

// Resolves a requested worker count: 0 means "default", taken from the
// RELIEFSEL_THREADS environment variable or, failing that, the hardware.
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RELIEFSEL_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(block_index, begin, end) over [0, total) split into fixed-size
// blocks. Block boundaries depend only on `total` and `block_size`, never on
// the worker count, so anything accumulated per block and merged in block
// order is bitwise reproducible for any number of threads. The first
// exception thrown by any block is rethrown on the calling thread.
inline void parallel_blocks(std::size_t total, std::size_t block_size, int threads,
                            const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  if (total == 0) return;
  if (block_size == 0) block_size = 1;
  const std::size_t num_blocks = (total + block_size - 1) / block_size;
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(1, threads)), num_blocks);

  if (workers == 1) {
    for (std::size_t b = 0; b < num_blocks; ++b) {
      const std::size_t lo = b * block_size;
      fn(b, lo, std::min(total, lo + block_size));
    }
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::atomic<bool> failed{false};

  auto run = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= num_blocks || failed.load(std::memory_order_relaxed)) return;
      const std::size_t lo = b * block_size;
      try {
        fn(b, lo, std::min(total, lo + block_size));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace relief
