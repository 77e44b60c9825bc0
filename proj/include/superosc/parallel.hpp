#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <vector>

namespace superosc {

/// How independent index-space work is executed. Serial is the reference
/// path; Parallel distributes indices over OpenMP threads. Both write results
/// by index, so outputs are identical.
enum class Execution { Serial, Parallel };

/// Calls body(i) for every i in [0, n). The first exception thrown by any
/// iteration is rethrown on the calling thread after the loop completes.
template <typename Body>
void parallel_for(std::size_t n, Body&& body, Execution execution = Execution::Parallel) {
  if (execution == Execution::Serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

/// out[i] = f(i) for i in [0, n).
template <typename T, typename F>
std::vector<T> parallel_map(std::size_t n, F&& f, Execution execution = Execution::Parallel) {
  std::vector<T> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = f(i); }, execution);
  return out;
}

}  // namespace superosc
