// Fixed-size work pool for sweep rows.  Results are stored by task index, so
// the output order never depends on scheduling.
#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace whitham::harness {

template <typename Result>
std::vector<Result> parallel_map(std::size_t n_tasks, int workers,
                                 const std::function<Result(std::size_t)>& task) {
  std::vector<Result> out(n_tasks);
  const std::size_t n_threads =
      std::min<std::size_t>(n_tasks, static_cast<std::size_t>(std::max(1, workers)));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < n_tasks; ++i) out[i] = task(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_tasks) return;
      try {
        out[i] = task(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(n_threads);
  for (std::size_t k = 0; k < n_threads; ++k) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

}  // namespace whitham::harness
