#include "nlup/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nlup {

namespace {
std::atomic<int> g_max_workers{0};
thread_local bool t_inside_parallel = false;

int env_thread_cap() {
  static const int cap = [] {
    const char* s = std::getenv("NLUP_THREADS");
    if (!s) return 0;
    int v = std::atoi(s);
    return v > 0 ? v : 0;
  }();
  return cap;
}
}  // namespace

void set_max_workers(int n) { g_max_workers.store(n < 0 ? 0 : n); }

int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (int env = env_thread_cap(); env > 0) n = std::min(n, env);
  if (int cap = g_max_workers.load(); cap > 0) n = std::min(n, cap);
  return std::max(n, 1);
}

void parallel_blocks(int n, int block, const std::function<void(int, int)>& fn) {
  if (n <= 0) return;
  block = std::max(block, 1);
  const int n_blocks = (n + block - 1) / block;
  // Nested calls run inline: the outer loop already owns the workers.
  const int threads =
      t_inside_parallel ? 1 : std::min(worker_count(), n_blocks);
  if (threads <= 1) {
    for (int b = 0; b < n_blocks; ++b)
      fn(b * block, std::min(n, (b + 1) * block));
    return;
  }

  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto run = [&] {
    const bool was_inside = t_inside_parallel;
    t_inside_parallel = true;
    for (bool stop = false; !stop;) {
      const int b = next.fetch_add(1);
      if (b >= n_blocks) break;
      try {
        fn(b * block, std::min(n, (b + 1) * block));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        stop = true;
      }
    }
    t_inside_parallel = was_inside;
  };

  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (int t = 1; t < threads; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  parallel_blocks(n, 1, [&](int begin, int end) {
    for (int i = begin; i < end; ++i) fn(i);
  });
}

}  // namespace nlup
