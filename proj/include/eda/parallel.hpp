#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace eda {

// Runs fn(0..count-1) across `threads` workers (0 = hardware concurrency).
// Work items are claimed from a shared counter; callers must write results
// into per-index slots so the outcome is schedule-invariant.
inline void parallel_for(std::int64_t count, int threads,
                         const std::function<void(std::int64_t)>& fn) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads <= 1 || count <= 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> workers;
  const int used = static_cast<int>(std::min<std::int64_t>(threads, count));
  workers.reserve(static_cast<std::size_t>(used));
  for (int w = 0; w < used; ++w) {
    workers.emplace_back([&]() {
      for (std::int64_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (std::thread& t : workers) t.join();
}

}  // namespace eda
