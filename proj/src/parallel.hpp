#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace pairbell::detail {

// Runs body(i) for i in [0, n) across OpenMP threads. Exceptions cannot cross
// the parallel region, so the first one thrown is captured and rethrown
// after the loop. Callers write results into pre-sized storage by index, which
// keeps output independent of the schedule.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace pairbell::detail
