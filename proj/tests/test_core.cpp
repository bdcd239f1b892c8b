#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "gtoda/errors.hpp"
#include "gtoda/parallel.hpp"
#include "gtoda/paths.hpp"
#include "gtoda/rng.hpp"
#include "gtoda/special.hpp"
#include "gtoda/stats.hpp"

using namespace gtoda;

TEST_CASE("philox known answers") {
  using A4 = std::array<std::uint32_t, 4>;
  CHECK(RngStream::philox({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(RngStream::philox({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(RngStream::philox({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  RngStream a(5, 3), b(5, 3), c(5, 4);
  for (int i = 0; i < 10; ++i) {
    const double u = a.uniform();
    CHECK(u == b.uniform());
    CHECK(u != c.uniform());
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("brownian path moments") {
  const TimeGrid grid(1.0, 50);
  const std::size_t n = 100000;
  const auto ends = parallel_map(n, [&](std::size_t r) {
    RngStream rng(11, r);
    const auto p = sample_brownian_path(2, DriftVector({0.0, 0.7}), grid, rng);
    return std::vector<double>{p(50, 0), p(50, 1), p(1, 0) - p(0, 0)};
  });
  std::vector<double> w0, w1, inc;
  for (const auto& e : ends) {
    w0.push_back(e[0]);
    w1.push_back(e[1]);
    inc.push_back(e[2] * e[2]);
  }
  const auto m0 = mean_ci(w0), m1 = mean_ci(w1), v = mean_ci(inc);
  CHECK(std::abs(m0.mean) < 4.0 * m0.std_error);
  CHECK(std::abs(m1.mean - 0.7) < 4.0 * m1.std_error);
  CHECK(std::abs(v.mean - grid.dt()) < 4.0 * v.std_error);
}

TEST_CASE("paths: argument errors and thread independence") {
  RngStream rng(1, 0);
  CHECK_THROWS_AS(sample_brownian_path(0, DriftVector::zero(0), TimeGrid(1.0, 10), rng), ArgumentError);
  CHECK_THROWS_AS(sample_brownian_path(2, DriftVector::zero(3), TimeGrid(1.0, 10), rng), ArgumentError);
  auto f = [](std::size_t r) {
    RngStream s(9, r);
    return sample_brownian_path(3, DriftVector::zero(3), TimeGrid(1.0, 100), s)(100, 2);
  };
  CHECK(parallel_map(64, f, 1) == serial_map(64, f));
  CHECK(parallel_map(64, f, 4) == serial_map(64, f));
}

TEST_CASE("log_integral_exp") {
  const std::size_t steps = 1000;
  const double dt = 1.0 / steps;
  std::vector<double> zero(steps + 1, 0.0), c(steps + 1, 2.5), lin(steps + 1);
  for (std::size_t m = 0; m <= steps; ++m) lin[m] = m * dt;
  CHECK(log_integral_exp(zero, dt, steps) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(log_integral_exp(c, dt, steps) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(std::isinf(log_integral_exp(lin, dt, 0)));
  CHECK(std::abs(log_integral_exp(lin, dt, steps) - std::log(std::numbers::e - 1.0)) < 1e-6);
  const auto cum = log_cumulative_integral_exp(lin, dt);
  for (std::size_t m = 2; m <= steps; ++m) CHECK(cum[m] >= cum[m - 1]);
}

TEST_CASE("log_integral_exp converges at second order") {
  auto err = [](std::size_t steps) {
    const double dt = 1.0 / steps;
    std::vector<double> f(steps + 1);
    for (std::size_t m = 0; m <= steps; ++m) f[m] = std::sin(m * dt);
    // int_0^1 e^{sin s} ds
    const double exact = 1.6318696084180513;
    return std::abs(std::exp(log_integral_exp(f, dt, steps)) - exact);
  };
  const double ratio = err(100) / err(200);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("path csv round trip") {
  RngStream rng(2, 0);
  const auto p = sample_brownian_path(3, DriftVector::zero(3), TimeGrid(0.5, 20), rng);
  std::stringstream ss;
  write_path_csv(ss, p);
  const auto q = read_path_csv(ss);
  REQUIRE(q.dims() == 3);
  REQUIRE(q.points() == p.points());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t m = 0; m < p.points(); ++m) CHECK(q(m, i) == p(m, i));
}

TEST_CASE("digamma and trigamma") {
  CHECK(digamma(1.0) == doctest::Approx(-0.57721566490153286).epsilon(1e-12));
  CHECK(trigamma(1.0) == doctest::Approx(std::numbers::pi * std::numbers::pi / 6.0).epsilon(1e-12));
  for (double x : {0.1, 0.7, 3.3, 25.0}) CHECK(std::abs(digamma(x + 1.0) - digamma(x) - 1.0 / x) < 1e-12);
  CHECK_THROWS_AS(digamma(0.0), DomainError);
  CHECK_THROWS_AS(trigamma(-1.0), DomainError);
}

TEST_CASE("macdonald and bessel functions against std") {
  for (double nu : {0.0, 0.3, 1.0, 2.5})
    for (double z : {0.05, 0.7, 3.0, 20.0}) {
      CHECK(macdonald_k(nu, z) == doctest::Approx(std::cyl_bessel_k(nu, z)).epsilon(1e-10));
      CHECK(modified_bessel_i(nu, z) == doctest::Approx(std::cyl_bessel_i(nu, z)).epsilon(1e-10));
    }
  // K_{i tau} is real, symmetric in tau
  const cplx a = macdonald_k(cplx(0.0, 1.3), 0.8), b = macdonald_k(cplx(0.0, -1.3), 0.8);
  CHECK(std::abs(a.imag()) < 1e-12);
  CHECK(std::abs(a - b) < 1e-12);
  CHECK_THROWS_AS(macdonald_k(0.5, 0.0), DomainError);
}

TEST_CASE("complex log gamma") {
  CHECK(std::abs(log_gamma_complex(cplx(5.0, 0.0)) - std::log(24.0)) < 1e-12);
  // |Gamma(1/2 + i y)|^2 = pi / cosh(pi y)
  const double y = 1.7;
  const double lhs = 2.0 * log_gamma_complex(cplx(0.5, y)).real();
  CHECK(lhs == doctest::Approx(std::log(std::numbers::pi / std::cosh(std::numbers::pi * y))).epsilon(1e-12));
}
