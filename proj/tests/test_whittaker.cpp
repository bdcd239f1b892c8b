#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gtoda/errors.hpp"
#include "gtoda/quadrature.hpp"
#include "gtoda/special.hpp"
#include "gtoda/whittaker.hpp"

using namespace gtoda;
using std::numbers::pi;

TEST_CASE("complex gamma") {
  CHECK(std::abs(gamma_complex(1.0) - 1.0) < 1e-13);
  CHECK(std::abs(gamma_complex(5.0) - 24.0) < 1e-11);
  CHECK(std::abs(gamma_complex(0.5) - std::sqrt(pi)) < 1e-13);
  const cplx z(0.3, 0.7);
  const cplx lhs = gamma_complex(z) * gamma_complex(1.0 - z), rhs = pi / std::sin(pi * z);
  CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
}

TEST_CASE("Macdonald function") {
  CHECK(macdonald_k(0.5, 1.0) == doctest::Approx(std::sqrt(pi / 2.0) * std::exp(-1.0)).epsilon(1e-12));
  for (double nu : {0.3, 1.7}) CHECK(macdonald_k(nu, 0.9) == doctest::Approx(macdonald_k(-nu, 0.9)).epsilon(1e-13));

  // Mellin-Barnes: K_nu(z) = (1/8 pi) int Gamma((s-nu)/2) Gamma((s+nu)/2) (z/2)^{-s} dy, s = c + iy
  const double nu = 0.3, z = 2.0, c = 1.0;
  auto f = [&](double y) {
    const cplx s(c, y);
    return (gamma_complex(0.5 * (s - nu)) * gamma_complex(0.5 * (s + nu)) * std::pow(cplx(z / 2.0), -s)).real();
  };
  const double mb = quad::integrate<double>(f, -80.0, 80.0, 1e-14, 1e-12).value / (8.0 * pi);
  CHECK(std::abs(macdonald_k(nu, z) - mb) < 1e-8);
}

TEST_CASE("psi for N = 1, 2") {
  const PsiValue p1 = whittaker_psi({0.7}, SpectralParam::from_parts({0.3}, {1.1}));
  CHECK(std::abs(p1.value - std::exp(cplx(0.3, 1.1) * 0.7)) < 1e-14);

  const SpectralParam lam = SpectralParam::real({0.2, -0.1});
  const cplx cf = whittaker_psi({1.0, 0.0}, lam, PsiMethod::closed_form).value;
  const cplx gv = whittaker_psi({1.0, 0.0}, lam, PsiMethod::givental).value;
  const double direct = 2.0 * std::exp(0.5 * 0.1 * 1.0) * std::cyl_bessel_k(0.3, 2.0 * std::exp(-0.5));
  CHECK(std::abs(cf.real() - direct) < 1e-12 * direct);
  CHECK(std::abs(cf - gv) < 1e-8 * std::abs(cf));
  const cplx mb = whittaker_psi({1.0, 0.0}, lam, PsiMethod::mellin_barnes).value;
  CHECK(std::abs(cf - mb) < 1e-8 * std::abs(cf));
}

TEST_CASE("imaginary spectral parameters: bound and conjugation") {
  const std::vector<std::vector<double>> xs = {{0.4, -0.3}, {1.2, 0.5, -0.8}};
  const std::vector<std::vector<double>> us = {{0.7, -0.2}, {0.5, 0.1, -0.9}};
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const auto lam = SpectralParam::imaginary(us[j]);
    const cplx a = whittaker_psi(xs[j], lam).value;
    const cplx b = whittaker_psi(xs[j], -lam).value;
    const double p0 = whittaker_psi(xs[j], SpectralParam::real(std::vector<double>(xs[j].size(), 0.0))).value.real();
    CHECK(std::abs(a) <= p0 * (1.0 + 1e-8));
    CHECK(std::abs(b - std::conj(a)) < 1e-7 * p0);
  }
}

TEST_CASE("N = 3 dual representations") {
  const SpectralParam lam = SpectralParam::from_parts({0.3, 0.0, -0.2}, {0.4, -0.1, 0.2});
  const std::vector<double> x{0.9, 0.1, -0.6};
  const cplx gv = whittaker_psi(x, lam, PsiMethod::givental).value;
  const cplx mb = whittaker_psi(x, lam, PsiMethod::mellin_barnes).value;
  CHECK(std::abs(gv - mb) < 1e-6 * std::abs(gv));
}

TEST_CASE("Sklyanin density") {
  CHECK(sklyanin_density(SpectralParam::imaginary({0.4})) == doctest::Approx(1.0 / (2.0 * pi)).epsilon(1e-14));
  auto shape = [](double u) { return u * std::sinh(pi * u) / pi; };
  const double a = sklyanin_density(SpectralParam::imaginary({0.5, -0.3}));
  const double b = sklyanin_density(SpectralParam::imaginary({1.1, 0.2}));
  CHECK(a / b == doctest::Approx(shape(0.8) / shape(0.9)).epsilon(1e-12));
  CHECK(sklyanin_density(SpectralParam::imaginary({0.2, 0.9, -0.4})) ==
        doctest::Approx(sklyanin_density(SpectralParam::imaginary({-0.4, 0.2, 0.9}))).epsilon(1e-13));
}

TEST_CASE("theta and entrance densities") {
  for (double x : {-1.0, 0.0, 2.0})
    CHECK(theta_density({x}, 0.7) == doctest::Approx(std::exp(-x * x / 1.4) / std::sqrt(2.0 * pi * 0.7)).epsilon(1e-10));
  for (double t : {0.5, 1.0, 2.0})
    for (double d : {-1.0, 0.0, 1.5, 4.0}) CHECK(theta_density({0.5 * d, -0.5 * d}, t) > 0.0);
  CHECK(std::abs(EntranceMarginalN2(1.0).total_mass() - 1.0) < 1e-6);
}

TEST_CASE("moment generating functions") {
  const std::vector<double> x{1.0, 0.0};
  CHECK(conditional_mgf(x, {0.2, -0.4}, SpectralParam::real({0.0, 0.0})) == cplx(1.0, 0.0));
  CHECK(dh_mgf(x, {0.0, 0.0}) == 1.0);
  CHECK(dh_mgf(x, {1.0, 0.0}) == doctest::Approx(std::numbers::e - 1.0).epsilon(1e-13));
  const std::vector<double> x3{1.3, 0.2, -0.7};
  CHECK(dh_mgf(x3, {0.5, -0.1, 0.3}) == doctest::Approx(dh_mgf(x3, {0.3, 0.5, -0.1})).epsilon(1e-12));
  CHECK(dh_mgf(x3, {0.4, 0.4, -0.2}) > 0.0);
}

TEST_CASE("contour moment formula") {
  const ContourSpec c1 = default_moment_contour(1);
  auto f = [](double g) { return std::exp(-g * g / 2.0 - std::exp(g)) / std::sqrt(2.0 * pi); };
  const double oracle = quad::integrate<double>(f, -12.0, 12.0, 1e-15, 1e-13).value;
  CHECK(moment_transform(1.0, 1.0, 1, c1) == doctest::Approx(oracle).epsilon(1e-8));
  CHECK(std::abs(moment_transform(1e-6, 1.0, 1, c1) - 1.0) < 1e-3);
  CHECK(std::abs(moment_transform(1e-6, 1.0, 2, default_moment_contour(2)) - 1.0) < 1e-3);
}

TEST_CASE("generalized inverse Gaussian law") {
  for (double mu : {0.0, 0.6}) {
    const double z = 0.7;
    const double mass = quad::integrate<double>([&](double u) { return gig_density(mu, z, u); }, -30.0, 30.0, 1e-14, 1e-12).value;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(gig_cdf(mu, z, 0.4) == doctest::Approx(quad::integrate<double>([&](double u) { return gig_density(mu, z, u); }, -30.0, 0.4, 1e-14, 1e-12).value).epsilon(1e-8));
  }
}

TEST_CASE("Hartman-Watson") {
  CHECK(std::abs(hartman_watson_laplace(1.0, 1.0) - std::cyl_bessel_i(1.0, 1.0)) < 1e-3);
  for (double r : {0.5, 1.0, 2.0})
    for (double t : {0.3, 1.0, 5.0, 30.0}) CHECK(hartman_watson_theta(r, t) >= 0.0);
}
