#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gtoda/errors.hpp"
#include "gtoda/grsk.hpp"
#include "gtoda/paths.hpp"
#include "gtoda/polymer.hpp"
#include "gtoda/rng.hpp"

using namespace gtoda;

namespace {

VectorPath linear_path(const TimeGrid& g, std::vector<double> slopes) {
  VectorPath p(g, slopes.size());
  for (std::size_t i = 0; i < slopes.size(); ++i)
    for (std::size_t m = 0; m < g.points(); ++m) p(m, i) = slopes[i] * g.t(m);
  return p;
}

VectorPath brownian(std::size_t n, const TimeGrid& g, std::uint64_t seed) {
  RngStream rng(seed, 0);
  return sample_brownian_path(n, DriftVector::zero(n), g, rng);
}

VectorPath reversed(const VectorPath& b) {
  VectorPath w(b.grid(), b.dims());
  for (std::size_t i = 0; i < b.dims(); ++i)
    for (std::size_t m = 0; m < b.points(); ++m) w(m, i) = b(m, b.dims() - 1 - i);
  return w;
}

}  // namespace

TEST_CASE("T_i on simple paths") {
  const TimeGrid g(1.0, 10000);
  const VectorPath z = transform_ti(linear_path(g, {0.0, 0.0}), 1);
  for (std::size_t m : {1, 17, 5000, 10000}) {
    CHECK(z(m, 0) == doctest::Approx(std::log(g.t(m))).epsilon(1e-12));
    CHECK(z(m, 1) == doctest::Approx(-std::log(g.t(m))).epsilon(1e-12));
  }
  // eta = (0, t): log(e - 1) and 1 - log(e - 1)
  const VectorPath y = transform_ti(linear_path(g, {0.0, 1.0}), 1);
  CHECK(std::abs(y(10000, 0) - 0.5413248546129181) < 1e-4);
  CHECK(std::abs(y(10000, 1) - 0.4586751453870819) < 1e-4);
  CHECK_THROWS_AS(transform_ti(linear_path(g, {0.0, 0.0}), 2), ArgumentError);
}

TEST_CASE("T for small N") {
  const TimeGrid g(1.0, 500);
  const VectorPath w1 = brownian(1, g, 3);
  const VectorPath t1 = transform_t(w1);
  for (std::size_t m = 0; m < g.points(); ++m) CHECK(t1(m, 0) == w1(m, 0));
  const VectorPath w2 = brownian(2, g, 4);
  const VectorPath a = transform_t(w2), b = transform_ti(w2, 1);
  for (std::size_t m = 1; m < g.points(); ++m) {
    CHECK(a(m, 0) == b(m, 0));
    CHECK(a(m, 1) == b(m, 1));
  }
}

TEST_CASE("sum conservation") {
  const TimeGrid g(1.0, 1000);
  for (std::size_t n = 2; n <= 5; ++n) CHECK(sum_conservation_residual(brownian(n, g, 10 + n)) <= 1e-12);
  // level sums of Pi_N
  const VectorPath w = brownian(4, g, 21);
  const PatternTrajectory p = transform_t_patterns(w);
  for (std::size_t k = 1; k <= 4; ++k)
    for (std::size_t m : {50, 400, 1000}) {
      double lhs = 0.0, rhs = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        lhs += p.level(k)(m, i);
        rhs += w(m, i);
      }
      CHECK(std::abs(lhs - rhs) < 1e-11);
    }
}

TEST_CASE("first coordinate matches the polymer recursion") {
  const TimeGrid g(1.0, 2000);
  for (std::size_t n = 2; n <= 4; ++n) {
    const VectorPath b = brownian(n, g, 30 + n);
    const VectorPath logz = log_partition(b, 1.0);
    const VectorPath tw = transform_t(reversed(b));
    double e = 0.0;
    for (std::size_t m = 200; m < g.points(); ++m) e = std::max(e, std::abs(logz(m, n - 1) - tw(m, 0)));
    CHECK(e < 1e-6);
  }
}

TEST_CASE("beta transform") {
  const TimeGrid g(1.0, 1000);
  CHECK_THROWS_AS(transform_t_beta(linear_path(g, {0.0, 0.0}), 0.0), ArgumentError);
  const VectorPath zb = transform_t_beta(linear_path(g, {0.0, 0.0}), 1.0);
  CHECK(std::abs(zb(1000, 0)) < 1e-12);
  CHECK(std::abs(zb(1000, 1)) < 1e-12);

  const VectorPath b = brownian(3, g, 40);
  for (double beta : {0.5, 2.0, 5.0}) {
    const VectorPath logz = log_partition(b, beta);
    const VectorPath tb = transform_t_beta(reversed(b), beta);
    double e = 0.0;
    for (std::size_t m = 100; m < g.points(); ++m)
      e = std::max(e, std::abs(logz(m, 2) / beta - (tb(m, 0) - 2.0 / beta * std::log(beta * beta))));
    CHECK(e < 1e-8);
  }
}

TEST_CASE("beta transform approaches Pitman monotonically") {
  const TimeGrid g(1.0, 2000);
  VectorPath p(g, 3);
  for (std::size_t m = 0; m < g.points(); ++m) {
    const double t = g.t(m);
    p(m, 0) = std::sin(3.0 * t);
    p(m, 1) = t * t - 0.5 * t;
    p(m, 2) = 0.8 * t;
  }
  const VectorPath pit = pitman_transform(p);
  double prev = 1e300;
  for (double beta : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) {
    const VectorPath tb = transform_t_beta(p, beta);
    double e = 0.0;
    for (std::size_t m = 200; m < g.points(); ++m)
      for (std::size_t i = 0; i < 3; ++i) e = std::max(e, std::abs(tb(m, i) - pit(m, i)));
    CHECK(e < prev);
    prev = e;
  }
}

TEST_CASE("Pitman transforms") {
  const TimeGrid g(1.0, 100);
  const VectorPath y = pitman_pi(linear_path(g, {0.0, 1.0}), 1);
  for (std::size_t m = 0; m < g.points(); ++m) {
    CHECK(y(m, 0) == doctest::Approx(g.t(m)));
    CHECK(std::abs(y(m, 1)) < 1e-15);
  }
  const VectorPath zero = pitman_transform(linear_path(g, {0.0, 0.0, 0.0}));
  for (std::size_t m = 0; m < g.points(); ++m)
    for (std::size_t i = 0; i < 3; ++i) CHECK(zero(m, i) == 0.0);

  // 2M - X
  const VectorPath b = brownian(2, TimeGrid(1.0, 1000), 50);
  const VectorPath pb = pitman_pi(b, 1);
  double run = 0.0;
  for (std::size_t m = 0; m < b.points(); ++m) {
    const double x = b(m, 1) - b(m, 0);
    run = std::max(run, x);
    CHECK(std::abs((pb(m, 1) - pb(m, 0)) - (x - 2.0 * run)) < 1e-12);
  }

  VectorPath bad = linear_path(g, {0.0, 1.0});
  bad(0, 0) = 0.3;
  CHECK_THROWS_AS(pitman_transform(bad), ArgumentError);
}

TEST_CASE("Pitman patterns interlace") {
  const TimeGrid g(1.0, 1000);
  const PatternTrajectory p = gamma_k(brownian(4, g, 60), 4);
  // ties between levels are computed along different rounding paths
  for (std::size_t m = 0; m < g.points(); ++m) CHECK(is_gelfand_tsetlin(p.state(m), 1e-14));
}

TEST_CASE("offset transform") {
  const TimeGrid g(1.0, 1000);
  const TriangularArray z = TriangularArray::from_rows({{0.0}, {0.0, 0.0}});
  const PatternTrajectory p = transform_t_offset(linear_path(g, {0.0, 0.0}), z);
  for (std::size_t m : {0, 10, 1000}) CHECK(p.bottom()(m, 0) == doctest::Approx(std::log1p(g.t(m))).epsilon(1e-12));
  // eta = (0, s): log(1 + e - 1) = 1, up to the left-point panel error
  const PatternTrajectory q = transform_t_offset(linear_path(g, {0.0, 1.0}), z);
  CHECK(std::abs(q.bottom()(1000, 0) - 1.0) < 1e-3);
  // at t_0 the pattern is z
  const TriangularArray z3 = TriangularArray::from_rows({{0.4}, {1.0, -0.2}, {1.5, 0.1, -0.9}});
  const PatternTrajectory r = transform_t_offset(brownian(3, g, 70), z3);
  const TriangularArray s = r.state(0);
  for (std::size_t i = 0; i < z3.flat().size(); ++i) CHECK(s.flat()[i] == doctest::Approx(z3.flat()[i]).epsilon(1e-12));
  CHECK_THROWS_AS(transform_t_offset(brownian(2, g, 71), z3), ArgumentError);
}

TEST_CASE("vanishing offsets recover T") {
  const TimeGrid g(1.0, 500);
  const VectorPath w = brownian(2, g, 80);
  const TriangularArray z = TriangularArray::from_rows({{0.0}, {-60.0, 60.0}});
  const PatternTrajectory p = transform_t_offset(w, z);
  const VectorPath t = transform_t(w);
  for (std::size_t m : {50, 250, 500}) CHECK(std::abs(p.bottom()(m, 0) - t(m, 0)) < 1e-9);
}

TEST_CASE("braid and symmetry") {
  const TimeGrid g(1.0, 1000);
  // zero path: after one step the path is log t, so the residual is a first-order panel error
  const BraidReport zero = verify_braid(linear_path(TimeGrid(1.0, 10000), {0.0, 0.0, 0.0}), 1, {10, 1}, 0.1);
  CHECK(zero.residuals[0] < 0.03);
  CHECK(zero.residuals[0] / zero.residuals[1] == doctest::Approx(10.0).epsilon(0.05));

  const BraidReport br = verify_braid(brownian(3, TimeGrid(1.0, 10000), 90), 1, {10, 1}, 0.1);
  REQUIRE(br.residuals.size() == 2);
  const double ratio = br.residuals[0] / br.residuals[1];
  CHECK(ratio > 5.0);
  CHECK(ratio < 20.0);

  CHECK(verify_symmetry(brownian(1, g, 91)).mirrored_residual == 0.0);
  for (std::size_t n : {2, 3}) CHECK(verify_symmetry(brownian(n, g, 92 + n)).mirrored_residual < 1e-9);
}

TEST_CASE("Greene sums") {
  const TimeGrid g(1.0, 40);
  for (std::size_t n : {2, 3}) {
    const VectorPath env = brownian(n, g, 100 + n);
    const VectorPath tw = transform_t(env);
    const VectorPath logz = log_partition(reversed(env), 1.0);
    CHECK(std::abs(greene_k_sum(env, 1, 40) - logz(40, n - 1)) < 1e-6);
    double all = 0.0;
    for (std::size_t i = 0; i < n; ++i) all += env(40, i);
    CHECK(std::abs(greene_k_sum(env, n, 40) - all) < 1e-12);
    double top = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      top += tw(40, k - 1);
      CHECK(std::abs(greene_k_sum(env, k, 40) - top) < 1e-6);
    }
  }
  CHECK_THROWS_AS(greene_k_sum(brownian(4, g, 110), 2, 40), UnsupportedSize);
}
