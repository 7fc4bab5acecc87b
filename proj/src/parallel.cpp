#include "ram/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ram {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  return std::max(1U, std::thread::hardware_concurrency());
}

void parallel_chunks(std::uint64_t count, int threads, std::uint64_t chunk,
                     const std::function<void(std::uint64_t, std::uint64_t, int)>& body) {
  chunk = std::max<std::uint64_t>(chunk, 1);
  threads = resolve_threads(threads);
  if (threads == 1 || count <= chunk) {
    for (std::uint64_t begin = 0; begin < count; begin += chunk) {
      body(begin, std::min(count, begin + chunk), 0);
    }
    return;
  }

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::atomic<bool> stop{false};

  auto worker = [&](int id) {
    try {
      while (!stop.load(std::memory_order_relaxed)) {
        const std::uint64_t begin = next.fetch_add(chunk);
        if (begin >= count) break;
        body(begin, std::min(count, begin + chunk), id);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      stop = true;
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int id = 0; id < threads; ++id) pool.emplace_back(worker, id);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace ram
