#include "gtoda/polymer.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "gtoda/errors.hpp"
#include "gtoda/parallel.hpp"
#include "gtoda/special.hpp"

namespace gtoda {

VectorPath log_partition(const VectorPath& env, double beta) {
  if (!std::isfinite(beta)) throw ArgumentError("log_partition: beta must be finite");
  if (env.first_defined_index() != 0) throw ArgumentError("log_partition: environment must be defined from t_0");
  const std::size_t n = env.dims();
  VectorPath out(env.grid(), n);
  const double log_dt = std::log(env.grid().dt());
  for (std::size_t m = 0; m < env.points(); ++m) out(m, 0) = beta * env(m, 0);
  for (std::size_t k = 2; k <= n; ++k) {
    const auto prev = out.coord(k - 2);
    const auto b = env.coord(k - 1);
    auto cur = out.coord(k - 1);
    LogAccumulator acc;
    for (std::size_t m = 0; m < env.points(); ++m) {
      if (m >= k - 1) acc.add(prev[m - 1] - beta * b[m] + log_dt);
      cur[m] = m >= k - 1 ? beta * b[m] + acc.value() : 0.0;
    }
    out.set_defined_from(k - 1, k - 1);
  }
  return out;
}

VectorPath ground_state(const VectorPath& env) {
  if (env.first_defined_index() != 0) throw ArgumentError("ground_state: environment must be defined from t_0");
  const std::size_t n = env.dims();
  VectorPath out(env.grid(), n);
  for (std::size_t m = 0; m < env.points(); ++m) out(m, 0) = env(m, 0);
  for (std::size_t k = 2; k <= n; ++k) {
    const auto prev = out.coord(k - 2);
    const auto b = env.coord(k - 1);
    auto cur = out.coord(k - 1);
    double best = kNegInf;
    for (std::size_t m = 0; m < env.points(); ++m) {
      if (m >= k - 1) best = std::max(best, prev[m - 1] - b[m]);
      cur[m] = m >= k - 1 ? b[m] + best : 0.0;
    }
    out.set_defined_from(k - 1, k - 1);
  }
  return out;
}

double free_energy_minimizer(double beta) {
  if (!(beta != 0.0) || !std::isfinite(beta)) throw ArgumentError("free_energy_minimizer: beta must be nonzero");
  const double target = beta * beta;
  // trigamma decreases from +inf to 0: bracket in log t, then polish with Newton
  double lo = -20.0, hi = 20.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (trigamma(std::exp(mid)) > target ? lo : hi) = mid;
  }
  double t = std::exp(0.5 * (lo + hi));
  for (int it = 0; it < 4; ++it) {
    const double h = 1e-5 * t;
    const double slope = (trigamma(t + h) - trigamma(t - h)) / (2 * h);
    const double step = (trigamma(t) - target) / slope;
    if (!std::isfinite(step) || t - step <= 0.0) break;
    t -= step;
  }
  return t;
}

double variational_free_energy(double beta) {
  const double t = free_energy_minimizer(beta);
  return beta * beta * t - digamma(t) - std::log(beta * beta);
}

FreeEnergyReport free_energy_check(std::size_t n, double beta, double dt, std::size_t reps, std::uint64_t seed) {
  if (n < 1) throw ArgumentError("free_energy_check: n must be positive");
  if (!(beta > 0.0)) throw ArgumentError("free_energy_check: beta must be positive");
  if (!(dt > 0.0) || reps < 2) throw ArgumentError("free_energy_check: need dt > 0 and at least 2 replicas");
  const double horizon = static_cast<double>(n);
  const auto steps = static_cast<std::size_t>(std::llround(horizon / dt));
  const TimeGrid grid(horizon, steps);
  const auto values = parallel_map(reps, [&](std::size_t r) {
    RngStream rng(seed, r);
    const VectorPath env = sample_brownian_path(n, DriftVector::zero(n), grid, rng);
    const VectorPath lz = log_partition(env, beta);
    return lz(grid.steps, n - 1) / horizon;
  });
  FreeEnergyReport rep;
  rep.n = n;
  rep.beta = beta;
  rep.replicas = reps;
  double s = 0.0, ss = 0.0;
  for (double v : values) s += v;
  rep.estimate = s / static_cast<double>(reps);
  for (double v : values) ss += (v - rep.estimate) * (v - rep.estimate);
  rep.std_error = std::sqrt(ss / static_cast<double>(reps - 1) / static_cast<double>(reps));
  rep.t_star = free_energy_minimizer(beta);
  rep.variational = variational_free_energy(beta);
  rep.relative_gap = std::abs(rep.estimate - rep.variational) / std::abs(rep.variational);
  return rep;
}

void write_log_partition_csv(std::ostream& os, const VectorPath& logz) {
  os << "t";
  for (std::size_t k = 1; k <= logz.dims(); ++k) os << ",logZ_" << k;
  os << '\n' << std::setprecision(17);
  for (std::size_t m = 0; m < logz.points(); ++m) {
    os << logz.grid().t(m);
    for (std::size_t k = 0; k < logz.dims(); ++k) {
      os << ',';
      if (m < logz.defined_from(k))
        os << "nan";
      else
        os << logz(m, k);
    }
    os << '\n';
  }
}

void write_ground_state_csv(std::ostream& os, const VectorPath& ground) {
  const std::size_t top = ground.dims() - 1;
  os << "t,M\n" << std::setprecision(17);
  for (std::size_t m = 0; m < ground.points(); ++m) {
    os << ground.grid().t(m) << ',';
    if (m < ground.defined_from(top))
      os << "nan";
    else
      os << ground(m, top);
    os << '\n';
  }
}

}  // namespace gtoda
