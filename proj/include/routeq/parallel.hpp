#pragma once

#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace routeq::par {

// 0 means "use all hardware threads". Setting 1 gives the serial reference
// path; tests compare its output against the parallel path bit for bit.
inline int& thread_limit() {
  static int limit = 0;
  return limit;
}

inline void set_thread_limit(int n) { thread_limit() = n; }

inline bool openmp_available() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

inline int effective_threads(int work_items) {
#ifdef _OPENMP
  int hw = omp_get_max_threads();
  int limit = thread_limit();
  int t = (limit > 0 && limit < hw) ? limit : hw;
  return t < work_items ? t : (work_items > 0 ? work_items : 1);
#else
  (void)work_items;
  return 1;
#endif
}

// Runs fn(i) for i in [0, n). Items must be independent; each writes only its
// own output slot, so results are identical for any thread count. The first
// exception thrown inside the loop is rethrown on the calling thread.
template <class F>
void parallel_for(int n, F&& fn) {
  if (n <= 0) return;
  int threads = effective_threads(n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
#ifdef _OPENMP
  std::exception_ptr err;
  std::mutex err_mutex;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mutex);
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
#else
  for (int i = 0; i < n; ++i) fn(i);
#endif
}

}  // namespace routeq::par
