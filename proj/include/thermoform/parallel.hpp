#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace thermoform {

// Worker count: THERMOFORM_THREADS if set and positive, hardware concurrency
// when unset or 0, always at least 1.
unsigned resolve_thread_count();

// Runs fn(i) for every i in [0, count). Each call must touch only state owned
// by index i; combining the per-index results in index order afterwards keeps
// the overall computation independent of the worker count.
template <typename Fn>
void parallel_for_index(std::uint64_t count, Fn&& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(resolve_thread_count(), count));
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  auto run = [&] {
    for (std::uint64_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned t = 0; t + 1 < workers; ++t) pool.emplace_back(run);
  run();
  for (std::thread& t : pool) t.join();
}

}  // namespace thermoform
