#pragma once

// Index-parallel map used by the sweeps, multi-start fits and Monte Carlo
// harnesses. The serial path is the reference; the OpenMP path must produce
// identical results because every job is a pure function of its index.

#include <cstddef>
#include <exception>
#include <type_traits>
#include <vector>

namespace eacl {

enum class Execution { serial, parallel };

template <class Fn>
auto map_indices(std::size_t n, Fn&& fn, Execution execution)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
  using R = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<R> out(n);
  if (execution == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  // Exceptions may not cross the OpenMP region boundary.
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace eacl
