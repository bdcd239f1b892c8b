#include <cmath>

#include "doctest.h"
#include "gtoda/errors.hpp"
#include "gtoda/gibbs.hpp"
#include "gtoda/grsk.hpp"
#include "gtoda/rng.hpp"
#include "gtoda/stats.hpp"
#include "gtoda/whittaker.hpp"

using namespace gtoda;

TEST_CASE("critical point, N = 2") {
  for (auto x : {std::vector<double>{1.0, -0.4}, std::vector<double>{3.0, 2.5}}) {
    const CriticalPoint c = critical_point(x);
    CHECK(c.pattern(1, 1) == doctest::Approx(0.5 * (x[0] + x[1])).epsilon(1e-12));
  }
}

TEST_CASE("critical point, N = 3 row means and translation") {
  const CriticalPoint c = critical_point({2.0, 0.0, -2.0});
  CHECK(c.grad_norm < 1e-10);
  CHECK(c.row_mean_residual < 1e-10);
  CHECK(std::abs(c.pattern(1, 1)) < 1e-10);
  CHECK(std::abs(c.pattern(2, 1) + c.pattern(2, 2)) < 1e-10);

  const CriticalPoint s = critical_point({2.7, 0.7, -1.3});
  for (std::size_t j = 0; j < c.pattern.flat().size(); ++j)
    CHECK(s.pattern.flat()[j] == doctest::Approx(c.pattern.flat()[j] + 0.7).epsilon(1e-10));
}

TEST_CASE("phase maximisation with unsorted bottom row") {
  const CriticalPoint c = maximize_phase({0.0708, -0.934, 0.824}, {0.1, 0.0, -0.2});
  CHECK(c.grad_norm < 1e-10);
}

TEST_CASE("GIG marginal of the N = 2 Gibbs law") {
  const std::vector<double> x{1.1, -0.2}, nu{-0.3, 0.25};
  RngStream rng(12, 0);
  const SigmaSamples s = sample_sigma(GibbsPatternLaw(x, nu), rng, 4000);
  std::vector<double> u;
  for (const auto& t : s.samples) u.push_back(t(1, 1) - 0.5 * (x[0] + x[1]));
  const double mu = nu[0] - nu[1], z = 0.5 * std::exp(0.5 * (x[0] - x[1]));
  CHECK(ks_one_sample(u, [&](double v) { return gig_cdf(mu, z, v); }, 0.01).passed);
}

TEST_CASE("symmetric Gibbs law has no skew") {
  RngStream rng(13, 0);
  const SigmaSamples s = sample_sigma(GibbsPatternLaw({0.4, 0.4}, {0.0, 0.0}), rng, 20000);
  std::vector<double> u, u3;
  for (const auto& t : s.samples) u.push_back(t(1, 1) - 0.4);
  const double sd = std::sqrt(mean_ci([&] {
                                std::vector<double> sq;
                                for (double v : u) sq.push_back(v * v);
                                return sq;
                              }())
                                  .mean);
  for (double v : u) u3.push_back(std::pow(v / sd, 3));
  const MeanCi skew = mean_ci(u3);
  CHECK(std::abs(skew.mean) < 4.0 * skew.std_error);
}

TEST_CASE("conditional MGF against samples, N = 3") {
  const std::vector<double> x{0.8, 0.1, -0.5}, nu{0.2, 0.0, -0.1};
  const SpectralParam lam = SpectralParam::real({0.3, -0.1, 0.2});
  RngStream rng(14, 0);
  const GibbsPatternLaw law(x, nu);
  const SigmaSamples s = sample_sigma(law, rng, 20000);
  // psi_{nu+lambda}/psi_nu = E exp(S_{nu+lambda} - S_nu) under sigma_nu
  const GibbsPatternLaw shifted(x, {nu[0] + 0.3, nu[1] - 0.1, nu[2] + 0.2});
  std::vector<double> w;
  for (const auto& t : s.samples) w.push_back(std::exp(shifted.s_nu(t) - law.s_nu(t)));
  const MeanCi m = mean_ci(w);
  const double exact = conditional_mgf(x, nu, lam).real();
  CHECK(std::abs(m.mean - exact) < 4.0 * m.std_error);
}

TEST_CASE("Gelfand-Tsetlin volume") {
  // vol = h(x) / prod k!
  const std::vector<double> x{1.1, 0.2, -0.8};
  CHECK(gt_volume(x) == doctest::Approx(vandermonde(x) / superfactorial(3)).epsilon(1e-12));
  const McEstimate mc = gt_volume_mc(x, 200000, 15);
  CHECK(std::abs(mc.value - gt_volume(x)) < 4.0 * mc.std_error);
}
