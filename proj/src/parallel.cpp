#include "slimcalc/parallel.hpp"

#include <atomic>

namespace slimcalc::par {

namespace {
std::atomic<int> g_threads{0};  // 0: use OpenMP default
}

int max_threads() {
#ifdef _OPENMP
  const int req = g_threads.load();
  return req > 0 ? req : omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
  g_threads.store(n);
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#endif
}

bool parallel_enabled() {
#ifdef _OPENMP
  return g_threads.load() != 1 && max_threads() > 1;
#else
  return false;
#endif
}

}  // namespace slimcalc::par
