#pragma once

#if defined(_OPENMP)
#include <omp.h>
#else
inline int omp_get_max_threads() { return 1; }
inline int omp_get_thread_num() { return 0; }
#endif

namespace cafesim {

/// Execution mode for the data-parallel kernels. Serial is the reference
/// path; Parallel uses OpenMP when compiled in and must produce bitwise
/// identical results (per-element work, no cross-element reductions).
enum class Exec { Serial, Parallel };

inline int max_threads(Exec mode) {
  return mode == Exec::Parallel ? omp_get_max_threads() : 1;
}

}  // namespace cafesim
