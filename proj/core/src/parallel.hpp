#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace regdecomp::detail {

// Worker cap from REGDECOMP_THREADS; 0, unset, or garbage means auto.
inline int worker_count() {
  if (const char* env = std::getenv("REGDECOMP_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      return static_cast<int>(v > 256 ? 256 : v);
    }
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

inline bool& in_parallel_region() {
  thread_local bool flag = false;
  return flag;
}

// fn(i) for i in [0, count), iterations independent. Nested calls run serial,
// so callers never have to reason about thread explosions.
inline void parallel_for(std::size_t count,
                         const std::function<void(std::size_t)>& fn) {
  int workers = worker_count();
  if (count <= 1 || workers <= 1 || in_parallel_region()) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::size_t nthreads = static_cast<std::size_t>(workers);
  if (nthreads > count) nthreads = count;
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  auto body = [&] {
    bool was_nested = in_parallel_region();
    in_parallel_region() = true;
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) break;
      try {
        fn(i);
      } catch (...) {
        if (!failed.exchange(true)) first_error = std::current_exception();
        break;
      }
    }
    in_parallel_region() = was_nested;
  };
  std::vector<std::thread> pool;
  pool.reserve(nthreads - 1);
  for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(body);
  body();
  for (auto& th : pool) th.join();
  if (failed.load() && first_error) std::rethrow_exception(first_error);
}

}  // namespace regdecomp::detail
