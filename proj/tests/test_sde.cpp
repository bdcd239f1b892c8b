#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gtoda/errors.hpp"
#include "gtoda/grsk.hpp"
#include "gtoda/parallel.hpp"
#include "gtoda/rng.hpp"
#include "gtoda/sde.hpp"
#include "gtoda/special.hpp"
#include "gtoda/stats.hpp"

using namespace gtoda;

namespace {

VectorPath subsample(const VectorPath& fine, std::size_t factor) {
  const TimeGrid g(fine.grid().horizon, fine.grid().steps / factor);
  VectorPath out(g, fine.dims());
  for (std::size_t i = 0; i < fine.dims(); ++i)
    for (std::size_t m = 0; m < g.points(); ++m) out(m, i) = fine(m * factor, i);
  return out;
}

}  // namespace

TEST_CASE("separated start with no noise barely moves") {
  const TriangularArray z = TriangularArray::from_rows({{0.0}, {40.0, -40.0}, {80.0, 0.0, -80.0}});
  const VectorPath w(TimeGrid(1.0, 1000), 3);
  const PatternTrajectory p = simulate_triangular_z(w, z);
  double motion = 0.0;
  for (std::size_t m = 0; m < w.points(); ++m) {
    const TriangularArray s = p.state(m);
    for (std::size_t j = 0; j < s.flat().size(); ++j) motion = std::max(motion, std::abs(s.flat()[j] - z.flat()[j]));
  }
  CHECK(motion < 1e-8);
}

TEST_CASE("Euler scheme converges to the integral construction") {
  const TriangularArray z = TriangularArray::from_rows({{0.2}, {0.9, -0.4}});
  RngStream rng(7, 0);
  const VectorPath fine = sample_brownian_path(2, DriftVector({0.3, -0.1}), TimeGrid(1.0, 100000), rng);
  std::vector<double> err;
  for (std::size_t factor : {1000, 100, 10}) {
    const VectorPath w = subsample(fine, factor);
    const std::size_t end = w.grid().steps;
    const VectorPath euler = simulate_triangular_z(w, z).bottom();
    // the exact construction, on the finest grid
    const VectorPath exact = transform_t_offset(fine, z).bottom();
    err.push_back(std::max(std::abs(euler(end, 0) - exact(100000, 0)), std::abs(euler(end, 1) - exact(100000, 1))));
  }
  CHECK(err[1] < err[0]);
  CHECK(err[2] < err[1]);
  CHECK(err[2] < 1e-3);
}

TEST_CASE("bottom row sum follows the noise") {
  const TriangularArray z = TriangularArray::from_rows({{0.1}, {0.5, -0.3}, {1.0, 0.0, -0.6}});
  RngStream rng(8, 0);
  const VectorPath w = sample_brownian_path(3, DriftVector({0.2, 0.0, -0.2}), TimeGrid(1.0, 2000), rng);
  const VectorPath b = simulate_triangular_z(w, z).bottom();
  for (std::size_t m : {1, 500, 2000}) {
    double lhs = 0.0, rhs = z.row_sum(3);
    for (std::size_t i = 0; i < 3; ++i) {
      lhs += b(m, i);
      rhs += w(m, i) - w(0, i);
    }
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("drift shift moves row sums by c t") {
  const TriangularArray z = TriangularArray::from_rows({{0.0}, {0.6, -0.6}});
  SdeConfig cfg;
  cfg.dt = 1e-2;
  const std::size_t reps = 4000;
  auto sums = [&](std::vector<double> nu, std::uint64_t seed) {
    return parallel_map(reps, [&](std::size_t r) {
      RngStream rng(seed, r);
      return simulate_triangular_z(nu, z, cfg, rng).state(100).row_sum(2);
    });
  };
  const MeanCi a = mean_ci(sums({0.1, -0.2}, 9)), b = mean_ci(sums({0.6, 0.3}, 10));
  CHECK(std::abs((b.mean - a.mean) - 2.0 * 0.5) < 4.0 * std::hypot(a.std_error, b.std_error));
}

TEST_CASE("tabulated Macdonald log slope") {
  for (double mu : {0.0, 0.3, 1.5}) {
    const MacdonaldLogSlope f(mu);
    for (double z : {1e-3, 0.05, 0.7, 3.0, 40.0}) CHECK(f(z) == doctest::Approx(f.direct(z)).epsilon(1e-6));
  }
  // K_{1/2}: -d/dz log K = 1 + 1/(2z)
  const MacdonaldLogSlope h(0.5);
  CHECK(h(2.0) == doctest::Approx(1.25).epsilon(1e-6));
}

TEST_CASE("exponential functional mean") {
  // E int_0^1 exp(2B_s - B_1) ds = e^{1/2} for driftless B
  const std::size_t reps = 20000;
  const auto v = parallel_map(reps, [](std::size_t r) {
    RngStream rng(11, r);
    return std::exp(log_exponential_functional(0.0, 1.0, 1e-3, rng));
  });
  const MeanCi m = mean_ci(v);
  CHECK(std::abs(m.mean - std::exp(0.5)) < 4.0 * m.std_error + 1e-3);
}
