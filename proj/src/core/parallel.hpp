#pragma once

#include <cstddef>
#include <exception>
#include <limits>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cusplim {

// Runs body(state, i) for i in [0, n). Each worker gets its own state from
// make_state(). If bodies throw, the exception from the smallest index is
// rethrown after the loop, so failures do not depend on scheduling.
template <typename MakeState, typename Body>
void parallel_for_state(std::size_t n, int n_threads, MakeState&& make_state, Body&& body) {
  std::exception_ptr first_error = nullptr;
  std::size_t first_error_index = std::numeric_limits<std::size_t>::max();

#ifdef _OPENMP
  if (n_threads != 1) {
    const int requested = n_threads > 0 ? n_threads : omp_get_max_threads();
#pragma omp parallel num_threads(requested)
    {
      auto state = make_state();
#pragma omp for schedule(dynamic)
      for (long long i = 0; i < static_cast<long long>(n); ++i) {
        bool skip = false;
#pragma omp critical(cusplim_parallel_error)
        skip = first_error != nullptr && static_cast<std::size_t>(i) > first_error_index;
        if (skip) continue;
        try {
          body(state, static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(cusplim_parallel_error)
          if (static_cast<std::size_t>(i) < first_error_index) {
            first_error_index = static_cast<std::size_t>(i);
            first_error = std::current_exception();
          }
        }
      }
    }
    if (first_error) std::rethrow_exception(first_error);
    return;
  }
#else
  (void)n_threads;
#endif

  auto state = make_state();
  for (std::size_t i = 0; i < n; ++i) {
    try {
      body(state, i);
    } catch (...) {
      first_error = std::current_exception();
      first_error_index = i;
      break;
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace cusplim
