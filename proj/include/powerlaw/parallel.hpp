#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace powerlaw::detail {

/// Run fn(0..count) across `threads` workers (0 = hardware concurrency).
/// Tasks must write to disjoint state; scheduling order is unspecified, so
/// results are schedule-independent only if each task is self-contained.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    constexpr std::size_t kBatch = 8;
    for (;;) {
      const std::size_t start = next.fetch_add(kBatch);
      if (start >= count) return;
      const std::size_t end = std::min(count, start + kBatch);
      try {
        for (std::size_t i = start; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  const unsigned spawned =
      static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::vector<std::thread> pool;
  pool.reserve(spawned);
  for (unsigned t = 0; t < spawned; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace powerlaw::detail
