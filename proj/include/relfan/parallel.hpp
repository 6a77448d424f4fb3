#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace relfan {

/// Serial is the reference path; parallel distributes independent indices
/// over OpenMP threads. Results must not depend on the choice.
enum class Exec { serial, parallel };

/// Calls fn(i) for i in [0, n). fn must only write to slot i of
/// caller-owned storage. The first exception thrown is rethrown after the
/// loop.
template <class Fn>
void for_each_index(std::size_t n, Exec exec, Fn&& fn) {
  if (exec == Exec::serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex m;
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(m);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace relfan
