#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#include "splaylab/experiment.hpp"

namespace splaylab::detail {

// Runs fn(0..trials-1) and returns the results in index order. The serial
// path is the reference the parallel one is tested against.
template <typename Fn>
auto for_each_trial(std::size_t trials, Execution exec, Fn fn) {
  using Result = decltype(fn(std::size_t{0}));
  std::vector<Result> results(trials);
  if (exec == Execution::kSerial) {
    for (std::size_t t = 0; t < trials; ++t) results[t] = fn(t);
    return results;
  }

  std::vector<std::exception_ptr> errors(trials);
  const auto count = static_cast<long long>(trials);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long t = 0; t < count; ++t) {
    const auto i = static_cast<std::size_t>(t);
    try {
      results[i] = fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace splaylab::detail
