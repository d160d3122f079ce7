#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include <Eigen/Dense>

namespace conexp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Default tolerance for membership, parallelism and collinearity decisions.
inline constexpr double kGeometricTolerance = 1e-9;

/// Tolerance on the total mass of a probability vector.
inline constexpr double kProbabilityTolerance = 1e-12;

/// Runs fn(i) for i in [0, n) on up to `threads` workers.
///
/// Work is split into contiguous blocks, so callers that write results to
/// slot i get output independent of the thread count. The first exception
/// thrown by a worker is rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, n);
  const std::size_t block = (n + workers - 1) / workers;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * block;
    const std::size_t end = std::min(n, begin + block);
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace conexp
