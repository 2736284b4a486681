#include "ksl/common.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ksl {

int thread_budget() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("KSL_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) hw = std::min<long>(hw, cap);
  }
  return hw;
}

void parallel_for(std::ptrdiff_t begin, std::ptrdiff_t end,
                  const std::function<void(std::ptrdiff_t, std::ptrdiff_t)>& chunk_fn) {
  const std::ptrdiff_t count = end - begin;
  if (count <= 0) return;
  const int threads = thread_budget();
  if (threads == 1 || count < 1024) {
    chunk_fn(begin, end);
    return;
  }
  const int chunks = std::min<std::ptrdiff_t>(threads, count);
  const std::ptrdiff_t step = (count + chunks - 1) / chunks;
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  pool.reserve(chunks);
  for (int c = 0; c < chunks; ++c) {
    const std::ptrdiff_t lo = begin + c * step;
    const std::ptrdiff_t hi = std::min(end, lo + step);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        chunk_fn(lo, hi);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace ksl
