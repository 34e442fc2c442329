#pragma once

#include <cstddef>
#include <future>
#include <thread>
#include <vector>

namespace polyspec {

/// Worker budget: hardware concurrency capped by the POLYSPEC_THREADS
/// environment variable (>= 1).
int thread_budget();

/// Run fn(begin, end) over a deterministic partition of [0, n) into
/// contiguous chunks, one per worker. Results must be written to disjoint
/// slices (or reduced per chunk and merged in chunk order) so the outcome is
/// independent of scheduling.
template <typename Fn>
void parallel_chunks(std::size_t n, Fn&& fn) {
  const int workers = thread_budget();
  if (n == 0) return;
  if (workers <= 1 || n < 64) {
    fn(std::size_t{0}, n);
    return;
  }
  const std::size_t chunks = std::min<std::size_t>(workers, n);
  std::vector<std::future<void>> tasks;
  tasks.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    std::size_t begin = n * c / chunks;
    std::size_t end = n * (c + 1) / chunks;
    tasks.push_back(std::async(std::launch::async, [begin, end, &fn] { fn(begin, end); }));
  }
  for (auto& t : tasks) t.get();
}

}  // namespace polyspec
