#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <type_traits>
#include <vector>

namespace gtoda {

/// Worker count used by parallel_map when none is given; 0 means the OpenMP default.
void set_default_threads(int threads);
int default_threads();

/// out[r] = f(r) for r in [0, n), one call per replica, in order. Reference for parallel_map.
template <class F>
auto serial_map(std::size_t n, F&& f) {
  using R = std::decay_t<decltype(f(std::size_t{0}))>;
  std::vector<R> out(n);
  for (std::size_t r = 0; r < n; ++r) out[r] = f(r);
  return out;
}

/// Same result as serial_map, computed by an OpenMP team. f must depend only on r
/// (each replica owns its RNG stream), so the output is independent of the thread count.
template <class F>
auto parallel_map(std::size_t n, F&& f, int threads = 0) {
  using R = std::decay_t<decltype(f(std::size_t{0}))>;
  std::vector<R> out(n);
  const int team = threads > 0 ? threads : default_threads();
  const long long count = static_cast<long long>(n);
  // exceptions may not leave an OpenMP region; keep the first and rethrow afterwards
  std::exception_ptr error;
  std::mutex error_lock;
  auto run = [&](long long r) {
    try {
      out[static_cast<std::size_t>(r)] = f(static_cast<std::size_t>(r));
    } catch (...) {
      std::lock_guard<std::mutex> g(error_lock);
      if (!error) error = std::current_exception();
    }
  };
  if (team > 0) {
#pragma omp parallel for schedule(dynamic) num_threads(team)
    for (long long r = 0; r < count; ++r) run(r);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (long long r = 0; r < count; ++r) run(r);
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace gtoda
