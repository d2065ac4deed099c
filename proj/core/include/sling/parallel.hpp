#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sling {

// Resolves a user-supplied worker count; 0 means "all hardware threads".
inline unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(worker, begin, end) over [0, count) in blocks of `grain`, handed out
// dynamically. Callers must make per-item results independent of which worker
// processes the item; everything in this library keys randomness and output
// slots by item index for that reason. The first exception is rethrown.
template <typename Fn>
void parallel_for_blocks(std::size_t count, unsigned workers, std::size_t grain, Fn&& fn) {
  workers = resolve_workers(workers);
  grain = std::max<std::size_t>(grain, 1);
  if (workers == 1 || count <= grain) {
    if (count > 0) fn(0u, std::size_t{0}, count);
    return;
  }
  const std::size_t blocks = (count + grain - 1) / grain;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, blocks));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&](unsigned worker) {
    try {
      for (;;) {
        const std::size_t block = next.fetch_add(1, std::memory_order_relaxed);
        if (block >= blocks) return;
        const std::size_t begin = block * grain;
        fn(worker, begin, std::min(count, begin + grain));
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(blocks, std::memory_order_relaxed);
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body, w);
  body(0);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace sling
