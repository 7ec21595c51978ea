#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "coxpp/rng.hpp"

namespace coxpp {

/// Worker count used by replicate loops; 0 means hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Evaluates fn(stream_i, i) for i in [first, first + reps) where
/// stream_i = key.stream(i) and returns the results in replicate order. The
/// output does not depend on the number of threads.
template <class Fn>
auto map_replicates(std::size_t reps, const StreamKey& key, Fn&& fn, std::size_t first = 0) {
  using R = decltype(fn(std::declval<RngStream&>(), std::size_t{}));
  std::vector<R> out(reps);
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(thread_count(), std::max<std::size_t>(reps, 1)));
  auto run_range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      RngStream rng = key.stream(first + i);
      out[i] = fn(rng, first + i);
    }
  };
  if (workers <= 1) {
    run_range(0, reps);
    return out;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const std::size_t chunk = (reps + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(reps, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        run_range(lo, hi);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

} // namespace coxpp
