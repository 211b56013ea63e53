#pragma once

#include <future>
#include <thread>
#include <vector>

namespace juntalab {

// Chunked worker pool over an index range. Each task writes only to its own
// slot and draws its own RNG stream, so results do not depend on the worker
// count; reductions happen afterwards in index order.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn, unsigned workers = 0) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  if (workers <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::future<void>> tasks;
  tasks.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    tasks.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    }));
  }
  for (auto& t : tasks) t.get();
}

}  // namespace juntalab
