#include "hierarchyrank/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <thread>
#include <vector>

namespace hierarchyrank {

namespace {
thread_local bool in_worker = false;
}

std::size_t worker_count() {
  if (const char* env = std::getenv("HIERARCHYRANK_THREADS")) {
    std::size_t value = 0;
    const char* end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec == std::errc{} && ptr == end && value > 0) return value;
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task) {
  if (n == 0) return;
  const std::size_t workers = in_worker ? 1 : std::min(n, worker_count());
  std::vector<std::exception_ptr> errors(n);

  if (workers <= 1) {
    const bool was_worker = in_worker;
    in_worker = true;
    for (std::size_t i = 0; i < n; ++i) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
        break;
      }
    }
    in_worker = was_worker;
  } else {
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    auto worker = [&] {
      in_worker = true;
      for (std::size_t i = next++; i < n && !failed; i = next++) {
        try {
          task(i);
        } catch (...) {
          errors[i] = std::current_exception();
          failed = true;
        }
      }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace hierarchyrank
