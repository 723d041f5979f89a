#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace subadd {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// Thrown when an operation would exceed the configured memory budget.
class resource_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a computation needs configuration that was not supplied
// (an explicit constant, a hypothesis mode) or when conditional and
// unconditional modes are mixed.
class config_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Memory budget for PrimeTable construction, in bytes.
// Override with the SUBADD_MEMORY_BUDGET_MB environment variable.
inline u64 default_memory_budget() {
  if (const char* env = std::getenv("SUBADD_MEMORY_BUDGET_MB")) {
    char* end = nullptr;
    unsigned long long mb = std::strtoull(env, &end, 10);
    if (end != env && mb > 0) return u64(mb) << 20;
  }
  return u64(4096) << 20;
}

// Runs fn(0 .. n_blocks-1), distributing block indices over `workers`
// threads. Callers write per-block results and merge them in index
// order, so the outcome never depends on the worker count. The first
// exception thrown by any worker is rethrown on the calling thread.
template <class Fn>
void for_each_block(u64 n_blocks, unsigned workers, Fn&& fn) {
  if (n_blocks == 0) return;
  if (workers <= 1 || n_blocks == 1) {
    for (u64 i = 0; i < n_blocks; ++i) fn(i);
    return;
  }
  std::atomic<u64> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto drain = [&] {
    try {
      for (u64 i = next.fetch_add(1); i < n_blocks; i = next.fetch_add(1))
        fn(i);
    } catch (...) {
      std::scoped_lock lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(n_blocks);  // stop handing out work
    }
  };
  unsigned n = static_cast<unsigned>(std::min<u64>(workers, n_blocks));
  std::vector<std::thread> pool;
  pool.reserve(n - 1);
  for (unsigned t = 0; t + 1 < n; ++t) pool.emplace_back(drain);
  drain();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace subadd
