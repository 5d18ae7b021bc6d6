#ifndef SLIMCALC_PARALLEL_HPP
#define SLIMCALC_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <mutex>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace slimcalc::par {

// Runtime switch between the OpenMP kernels and the serial reference path.
// Results are bit-identical either way: workers only fill disjoint slots and
// every reduction runs in fixed index order afterwards.

int max_threads();
void set_threads(int n);    // n <= 1 selects the serial reference path
bool parallel_enabled();

template <class F>
void parallel_for(std::size_t n, F&& fn) {
  if (!parallel_enabled()) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
#ifdef _OPENMP
  // Exceptions may not unwind out of the parallel region: capture the first
  // one and rethrow after the join.
  std::exception_ptr err;
  std::mutex err_mutex;
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mutex);
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
#else
  for (std::size_t i = 0; i < n; ++i) fn(i);
#endif
}

/// results[i] = fn(i), evaluated in parallel; the vector itself is ordered.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& fn) {
  std::vector<T> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

/// Deterministic sum: parallel map, then fixed-order accumulation.
template <class T, class F>
T parallel_sum(std::size_t n, F&& fn, T init = T{}) {
  std::vector<T> parts = parallel_map<T>(n, fn);
  T acc = init;
  for (const T& p : parts) acc += p;
  return acc;
}

}  // namespace slimcalc::par

#endif
