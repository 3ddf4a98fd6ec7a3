#pragma once

#include <cstddef>
#include <exception>

namespace lawnsec {

enum class Execution { Serial, Parallel };

/// Calls f(i) for i in [0, n). Parallel uses an OpenMP dynamic schedule; the
/// first exception thrown by any task is rethrown after the loop. Callers
/// write results into per-index slots, so both modes give identical output.
template <class F>
void for_each_index(std::size_t n, Execution ex, F&& f) {
  if (ex == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::exception_ptr error;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(lawnsec_for_each_index)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace lawnsec
