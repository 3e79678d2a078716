#include "lociso/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lociso {

namespace {
std::atomic<std::size_t> g_workers{0};
}

void set_worker_count(std::size_t n) { g_workers = n; }

std::size_t worker_count() {
  std::size_t n = g_workers.load();
  if (n == 0) n = std::max<unsigned>(1, std::thread::hardware_concurrency());
  return n;
}

void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  std::size_t workers = std::min(worker_count(), std::max<std::size_t>(1, n / 64));
  if (workers <= 1) {
    if (n > 0) body(0, 0, n);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t begin = w * chunk, end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, w, begin, end] {
      try {
        body(w, begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace lociso
