#pragma once

// Data-parallel loop helpers. Every kernel in the library takes an Execution
// argument; Execution::serial runs the plain loop and is the reference the
// OpenMP path is tested against (outputs must be identical).

#include <cstddef>
#include <exception>
#include <mutex>

#ifdef LOWSPACE_HAVE_OPENMP
#include <omp.h>
#endif

namespace lowspace {

enum class Execution { serial, parallel };

inline int max_threads() {
#ifdef LOWSPACE_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Runs body(state, i) for i in [0, count). One state object is created per
/// worker via make_state(); bodies must only write to index-owned output.
template <class MakeState, class Body>
void parallel_for_with_state(Execution exec, std::size_t count, MakeState make_state, Body body) {
  if (exec == Execution::serial || count < 2) {
    auto state = make_state();
    for (std::size_t i = 0; i < count; ++i) body(state, i);
    return;
  }
#ifdef LOWSPACE_HAVE_OPENMP
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto n = static_cast<long long>(count);
#pragma omp parallel
  {
    auto state = make_state();
#pragma omp for schedule(dynamic, 1)
    for (long long i = 0; i < n; ++i) {
      try {
        body(state, static_cast<std::size_t>(i));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
#else
  auto state = make_state();
  for (std::size_t i = 0; i < count; ++i) body(state, i);
#endif
}

template <class Body>
void parallel_for(Execution exec, std::size_t count, Body body) {
  parallel_for_with_state(
      exec, count, [] { return 0; }, [&](int&, std::size_t i) { body(i); });
}

}  // namespace lowspace
