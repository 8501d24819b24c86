#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace triplekit {

// Execution policy for the sampling sweeps. Both policies fill the same
// per-sample slots from per-sample forked generators, so results are bitwise
// identical; openmp only changes who computes each slot.
enum class Exec { serial, openmp };

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Evaluates fn(i) for i in [0, n) into a vector. Exceptions thrown by any
// sample are captured and rethrown after the loop finishes, first index wins.
template <typename T>
std::vector<T> sample_table(Exec exec, std::size_t n, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::exception_ptr error;
  std::size_t error_index = n;
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    try {
      out[i] = fn(i);
    } catch (...) {
#pragma omp critical
      {
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace triplekit
