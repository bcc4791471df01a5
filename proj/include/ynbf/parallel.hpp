#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ynbf {

/// Calls fn(i) for every i in [0, count) across worker threads.
///
/// Work is handed out by index, so results stored per index are independent
/// of scheduling. The first exception thrown by fn is rethrown here.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn, std::size_t max_threads = 0) {
  std::size_t threads = max_threads ? max_threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i)
      fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock{error_mutex};
        if (!error)
          error = std::current_exception();
        next = count;
      }
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(threads - 1);
  for (std::size_t t = 1; t < threads; ++t)
    pool.emplace_back(worker);
  worker();
  pool.clear();
  if (error)
    std::rethrow_exception(error);
}

} // namespace ynbf
