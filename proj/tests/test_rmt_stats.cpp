#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "gtoda/errors.hpp"
#include "gtoda/parallel.hpp"
#include "gtoda/rmt.hpp"
#include "gtoda/rng.hpp"
#include "gtoda/special.hpp"
#include "gtoda/stats.hpp"
#include "gtoda/suites.hpp"

using namespace gtoda;

TEST_CASE("tridiagonal eigenvalues") {
  const auto e = eig_sym_tridiag({2.0, 2.0}, {1.0});
  REQUIRE(e.size() == 2);
  CHECK(e[0] == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(e[1] == doctest::Approx(1.0).epsilon(1e-13));
  // 1-d Laplacian: 2 - 2 cos(k pi / (n + 1))
  const std::size_t n = 7;
  const auto l = eig_sym_tridiag(std::vector<double>(n, 2.0), std::vector<double>(n - 1, -1.0));
  for (std::size_t k = 1; k <= n; ++k)
    CHECK(l[k - 1] == doctest::Approx(2.0 - 2.0 * std::cos((n + 1 - k) * 3.141592653589793 / (n + 1))).epsilon(1e-12));
}

TEST_CASE("N = 1 GUE is standard normal") {
  const auto v = largest_eigenvalue_samples(1, 5000, 3);
  CHECK(ks_one_sample(v, normal_cdf, 0.01).passed);
}

TEST_CASE("tridiagonal and dense GUE agree") {
  const std::size_t reps = 10000;
  for (std::size_t n : {2, 3}) {
    const auto tri = parallel_map(reps, [&](std::size_t r) {
      RngStream rng(20 + n, r);
      return sample_gue_spectrum(n, rng);
    });
    const auto dense = parallel_map(reps, [&](std::size_t r) {
      RngStream rng(30 + n, r);
      return sample_gue_spectrum_dense(n, rng);
    });
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<double> a, b;
      for (std::size_t r = 0; r < reps; ++r) {
        a.push_back(tri[r][j]);
        b.push_back(dense[r][j]);
      }
      CHECK(ks_two_sample(a, b, 0.01).passed);
    }
  }
  RngStream rng(1, 0);
  CHECK_THROWS_AS(sample_gue_spectrum_dense(4, rng), UnsupportedSize);
}

TEST_CASE("KS critical value and edge cases") {
  CHECK(ks_critical_value(0.01) == doctest::Approx(1.6276).epsilon(1e-4));
  CHECK(ks_critical_value(0.05) == doctest::Approx(1.3581).epsilon(1e-4));
  std::vector<double> a(2000), b(2000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = static_cast<double>(i);
    b[i] = 1e6 + static_cast<double>(i);
  }
  CHECK(ks_two_sample(a, a, 0.01).statistic == 0.0);
  CHECK(ks_two_sample(a, b, 0.01).statistic == 1.0);
  CHECK_FALSE(ks_two_sample(a, b, 0.01).passed);

  RngStream rng(4, 0);
  std::vector<double> u(3000);
  for (auto& x : u) x = rng.uniform();
  CHECK(ks_one_sample(u, [](double x) { return std::clamp(x, 0.0, 1.0); }, 0.01).passed);
  CHECK_THROWS_AS(ks_two_sample({}, a, 0.01), ArgumentError);
}

TEST_CASE("asymptotic KS threshold against a permutation oracle") {
  RngStream rng(5, 0);
  std::vector<double> pool(1000);
  for (auto& x : pool) x = rng.normal();
  const std::size_t perms = 2000;
  std::vector<double> d(perms);
  for (std::size_t p = 0; p < perms; ++p) {
    for (std::size_t i = pool.size() - 1; i > 0; --i) std::swap(pool[i], pool[std::min(i, static_cast<std::size_t>(rng.uniform() * static_cast<double>(i + 1)))]);
    d[p] = ks_two_sample({pool.begin(), pool.begin() + 500}, {pool.begin() + 500, pool.end()}, 0.01).statistic;
  }
  std::sort(d.begin(), d.end());
  const double q99 = d[static_cast<std::size_t>(0.99 * perms)];
  const double asym = ks_two_sample({pool.begin(), pool.begin() + 500}, {pool.begin() + 500, pool.end()}, 0.01).threshold;
  CHECK(std::abs(q99 - asym) / asym < 0.1);
}

TEST_CASE("suite reports are deterministic") {
  const auto a = run_suite("bump-stade", {});
  const auto b = run_suite("bump-stade", {});
  CHECK(a.to_json(false) == b.to_json(false));
  const auto c = run_suite("critical-point", {{"ns", "2,3"}});
  CHECK(c.to_json(false) == run_suite("critical-point", {{"ns", "2,3"}}).to_json(false));
  CHECK(c.passed());
  CHECK_THROWS_AS(run_suite("nope", {}), ArgumentError);
  CHECK_THROWS_AS(run_suite("bump-stade", {{"bogus", "1"}}), ArgumentError);
  CHECK_THROWS_AS(run_suite("gibbs-gig", {{"n", "100"}}), ArgumentError);
}

TEST_CASE("Bonferroni verdicts") {
  SuiteReport r;
  KsResult k;
  // raw threshold 1.6276 * sqrt(2 / 10000); two checks at alpha / 2 widen it
  k.statistic = 0.0235;
  k.threshold = ks_critical_value(0.01) * std::sqrt(2.0 / 10000.0);
  k.passed = false;
  k.n = k.m = 10000;
  k.alpha = 0.01;
  r.add_ks("a", k);
  r.add_ks("b", k);
  r.add_max("c", 1.0, 2.0);
  r.finalize_bonferroni();
  CHECK_FALSE(r.passed());
  CHECK(r.passed_bonferroni());
  REQUIRE(r.checks[0].bonferroni_threshold);
  CHECK(*r.checks[0].bonferroni_threshold > k.threshold);
}
