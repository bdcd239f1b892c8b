#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "gtoda/errors.hpp"
#include "gtoda/parallel.hpp"
#include "gtoda/paths.hpp"
#include "gtoda/polymer.hpp"
#include "gtoda/rng.hpp"
#include "gtoda/stats.hpp"

using namespace gtoda;

namespace {

VectorPath brownian(std::size_t n, const TimeGrid& g, std::uint64_t seed, std::uint64_t r = 0) {
  RngStream rng(seed, r);
  return sample_brownian_path(n, DriftVector::zero(n), g, rng);
}

}  // namespace

TEST_CASE("log partition on trivial environments") {
  const TimeGrid g(1.0, 1000);
  const VectorPath b = brownian(1, g, 1);
  const VectorPath z1 = log_partition(b, 0.7);
  for (std::size_t m = 0; m < g.points(); ++m) CHECK(z1(m, 0) == doctest::Approx(0.7 * b(m, 0)).epsilon(1e-15));

  // simplex volume t^{N-1}/(N-1)!; the grid sum is t(t - dt)/2 for N = 3
  const VectorPath zero(g, 3);
  for (double beta : {1.0, 3.0, -0.5, 0.0}) {
    const VectorPath z = log_partition(zero, beta);
    CHECK(z(1000, 1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(z(1000, 2) == doctest::Approx(std::log(0.5 * (1.0 - g.dt()))).epsilon(1e-12));
    CHECK(std::abs(z(1000, 2) - std::log(0.5)) < 2.0 * g.dt());
  }
}

TEST_CASE("log partition grows with t on a frozen environment") {
  // the integrand exp(beta(B_k(t) - B_k(s))) moves with t, so compare log Z - beta B_N
  const TimeGrid g(1.0, 2000);
  const VectorPath b = brownian(3, g, 2);
  const VectorPath z = log_partition(b, 1.0);
  for (std::size_t m = 3; m < g.points(); ++m) CHECK(z(m, 2) - b(m, 2) >= z(m - 1, 2) - b(m - 1, 2));
}

TEST_CASE("ground state") {
  const TimeGrid g(1.0, 100);
  const VectorPath zero(g, 3);
  const VectorPath m0 = ground_state(zero);
  for (std::size_t m = 2; m < g.points(); ++m) CHECK(m0(m, 2) == 0.0);

  VectorPath lin(g, 2);
  for (std::size_t m = 0; m < g.points(); ++m) lin(m, 0) = g.t(m);
  // the jump sees B_1 at the left end of its panel
  CHECK(ground_state(lin)(100, 1) == doctest::Approx(1.0 - g.dt()).epsilon(1e-12));
}

TEST_CASE("ground state equals brute-force maximisation") {
  const TimeGrid g(1.0, 60);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const VectorPath b = brownian(3, g, 3, seed);
    const VectorPath gs = ground_state(b);
    for (std::size_t m : {2, 17, 60}) {
      double best2 = -1e300, best3 = -1e300;
      for (std::size_t j1 = 1; j1 <= m; ++j1) {
        best2 = std::max(best2, b(j1 - 1, 0) - b(j1, 1) + b(m, 1));
        for (std::size_t j2 = j1 + 1; j2 <= m; ++j2)
          best3 = std::max(best3, b(j1 - 1, 0) + b(j2 - 1, 1) - b(j1, 1) + b(m, 2) - b(j2, 2));
      }
      CHECK(gs(m, 1) == best2);
      CHECK(gs(m, 2) == doctest::Approx(best3).epsilon(1e-15));
    }
  }
}

TEST_CASE("beta^{-1} log(Z / volume) increases to M") {
  const TimeGrid g(1.0, 1000);
  const VectorPath b = brownian(3, g, 4);
  const double gs = ground_state(b)(1000, 2);
  const double vol = log_partition(VectorPath(g, 3), 1.0)(1000, 2);
  double prev = -1e300;
  for (double beta : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) {
    const double v = (log_partition(b, beta)(1000, 2) - vol) / beta;
    CHECK(v >= prev);
    CHECK(v <= gs + 1e-12);
    // one jump configuration alone carries dt^{N-1} e^{beta M}
    CHECK(v + vol / beta >= gs + 2.0 * std::log(g.dt()) / beta - 1e-12);
    prev = v;
  }
}

TEST_CASE("linear environment: log Z / beta against the Laplace rate") {
  const TimeGrid g(1.0, 100000);
  VectorPath lin(g, 2);
  for (std::size_t m = 0; m < g.points(); ++m) lin(m, 0) = g.t(m);
  for (double beta : {4.0, 16.0, 64.0}) {
    const double exact = (beta + std::log(-std::expm1(-beta)) - std::log(beta)) / beta;
    CHECK(std::abs(log_partition(lin, beta)(100000, 1) / beta - exact) < 1e-3);
  }
}

TEST_CASE("free energy variational value") {
  CHECK(free_energy_minimizer(1.0) == doctest::Approx(1.42625512021507899).epsilon(1e-12));
  CHECK(variational_free_energy(1.0) == doctest::Approx(1.46105432642945454).epsilon(1e-12));
  CHECK(free_energy_minimizer(2.0) == doctest::Approx(0.56638598899901324).epsilon(1e-12));
  CHECK(variational_free_energy(2.0) == doctest::Approx(2.54804253276514052).epsilon(1e-12));
  CHECK_THROWS_AS(free_energy_minimizer(0.0), ArgumentError);
}

TEST_CASE("brownian scaling of the partition function") {
  // log Z_1(beta) =d -2(N-1) log beta + log Z_{beta^2}(1)
  const std::size_t reps = 4000, n = 3;
  const double beta = 2.0;
  const auto a = parallel_map(reps, [&](std::size_t r) {
    return log_partition(brownian(n, TimeGrid(1.0, 400), 5, r), beta)(400, n - 1);
  });
  const auto b = parallel_map(reps, [&](std::size_t r) {
    return log_partition(brownian(n, TimeGrid(beta * beta, 400), 6, r), 1.0)(400, n - 1) -
           2.0 * (n - 1) * std::log(beta);
  });
  const MeanCi ma = mean_ci(a), mb = mean_ci(b);
  const double se = std::hypot(ma.std_error, mb.std_error);
  CHECK(std::abs(ma.mean - mb.mean) < 4.0 * se);
}
