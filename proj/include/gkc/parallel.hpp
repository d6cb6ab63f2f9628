#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gkc {

// Process-wide worker count for the OpenMP kernels. 0 = use the OpenMP
// default. Every parallel loop in this codebase produces output that is
// sorted or indexed deterministically, so results do not depend on this.
void set_thread_count(int n);
int thread_count();

inline int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// OpenMP-parallel loop over [0, n). `f(i)` must only write to state owned
// by iteration i. The serial twin is kept for the reference path and for
// the benchmark comparison.
template <typename F>
void parallel_for(std::size_t n, F&& f) {
#ifdef _OPENMP
  const int nt = thread_count();
#pragma omp parallel for schedule(dynamic, 16) num_threads(nt > 0 ? nt : omp_get_max_threads())
  for (long long i = 0; i < static_cast<long long>(n); ++i) f(static_cast<std::size_t>(i));
#else
  for (std::size_t i = 0; i < n; ++i) f(i);
#endif
}

template <typename F>
void serial_for(std::size_t n, F&& f) {
  for (std::size_t i = 0; i < n; ++i) f(i);
}

}  // namespace gkc
