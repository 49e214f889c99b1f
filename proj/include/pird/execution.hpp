#pragma once

#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>

namespace pird {

/// Selects between the serial reference loop and the OpenMP loop for
/// per-frequency kernels. Both run the same body in the same order per
/// index, so outputs are bit-identical.
enum class Execution { serial, parallel };

namespace detail {

/// Runs body(i) for i in [0, n). If any iteration throws, the exception
/// from the lowest failing index is rethrown after the loop completes.
template <class Body>
void for_each_index(Execution exec, std::size_t n, Body&& body) {
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr first_error;
  std::size_t first_index = std::numeric_limits<std::size_t>::max();
  std::mutex guard;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
  for (long long k = 0; k < count; ++k) {
    const auto i = static_cast<std::size_t>(k);
    try {
      body(i);
    } catch (...) {
      std::lock_guard lock(guard);
      if (i < first_index) {
        first_index = i;
        first_error = std::current_exception();
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail
}  // namespace pird
