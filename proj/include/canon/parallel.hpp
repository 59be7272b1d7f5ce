#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace canon {

/// How independent tasks are executed. `workers == 1` selects the serial
/// reference path; anything larger uses an OpenMP team of that size.
/// Nested calls (already inside a parallel region) always run serially.
struct Exec {
  int workers = 1;

  static Exec serial() { return Exec{1}; }
  bool parallel() const;
};

inline bool Exec::parallel() const {
#ifdef _OPENMP
  return workers > 1 && !omp_in_parallel();
#else
  return false;
#endif
}

/// Serial reference: calls fn(i) for i = 0..count-1 in order.
template <class Fn>
void for_each_index_serial(std::size_t count, Fn&& fn) {
  for (std::size_t i = 0; i < count; ++i) fn(i);
}

/// Calls fn(i) for every index, possibly concurrently. fn must only write
/// to slot i of caller-owned storage. If tasks throw, the exception of the
/// lowest failing index is rethrown after the loop, as the serial path would.
template <class Fn>
void for_each_index(const Exec& exec, std::size_t count, Fn&& fn) {
  if (!exec.parallel() || count < 2) {
    for_each_index_serial(count, fn);
    return;
  }
#ifdef _OPENMP
  std::exception_ptr failure;
  std::size_t failure_index = count;
  std::mutex failure_mutex;
  const long long n = static_cast<long long>(count);
#pragma omp parallel for num_threads(exec.workers) schedule(dynamic, 1)
  for (long long i = 0; i < n; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (static_cast<std::size_t>(i) < failure_index) {
        failure_index = static_cast<std::size_t>(i);
        failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
#endif
}

/// Index-ordered results of fn(0..count-1); identical for every Exec.
template <class T, class Fn>
std::vector<T> map_indices(const Exec& exec, std::size_t count, Fn&& fn) {
  std::vector<T> out(count);
  for_each_index(exec, count, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace canon
