#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace kerrcs::app {

// Runs fn(0..n-1) on up to `threads` threads. Every index runs; the failure
// with the lowest index is rethrown, so errors do not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto extra = static_cast<std::size_t>(std::max(threads, 1)) - 1;
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < std::min(extra, n); ++t) pool.emplace_back(worker);
    worker();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace kerrcs::app
