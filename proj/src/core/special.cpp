#include "gtoda/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "gtoda/errors.hpp"
#include "gtoda/quadrature.hpp"

namespace gtoda {

namespace {

constexpr double kPi = std::numbers::pi;

// B_{2k} / (2k (2k-1)) for k = 1..10.
constexpr double kStirling[] = {1.0 / 12.0,
                                -1.0 / 360.0,
                                1.0 / 1260.0,
                                -1.0 / 1680.0,
                                1.0 / 1188.0,
                                -691.0 / 360360.0,
                                1.0 / 156.0,
                                -3617.0 / 122400.0,
                                43867.0 / 244188.0,
                                -174611.0 / 125400.0};

}  // namespace

cplx log_gamma_complex(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw PoleError("log_gamma_complex: pole at non-positive integer");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("log_gamma_complex: non-finite argument");
  // Shift right until the Stirling series converges to full precision.
  cplx shift_log = 0.0;
  cplx w = z;
  while (w.real() < 15.0 || std::abs(w) < 17.0) {
    shift_log += std::log(w);
    w += 1.0;
  }
  const cplx inv = 1.0 / w;
  const cplx inv2 = inv * inv;
  cplx series = 0.0;
  cplx p = inv;
  for (double c : kStirling) {
    series += c * p;
    p *= inv2;
  }
  return (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * kPi) + series - shift_log;
}

double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("digamma: requires x > 0");
  double acc = 0.0;
  while (x < 12.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double r = 1.0 / (x * x);
  const double tail =
      r * (1.0 / 12 - r * (1.0 / 120 - r * (1.0 / 252 - r * (1.0 / 240 - r * (1.0 / 132 - r * (691.0 / 32760 - r / 12.0))))));
  return acc + std::log(x) - 0.5 / x - tail;
}

double trigamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("trigamma: requires x > 0");
  double acc = 0.0;
  while (x < 12.0) {
    acc += 1.0 / (x * x);
    x += 1.0;
  }
  const double r = 1.0 / (x * x);
  const double tail =
      1.0 / 6 - r * (1.0 / 30 - r * (1.0 / 42 - r * (1.0 / 30 - r * (5.0 / 66 - r * (691.0 / 2730 - r * 7.0 / 6)))));
  return acc + 1.0 / x + 0.5 * r + tail * r / x;
}

namespace {

// (1/2) * integral of exp(nu*u - z*cosh u) along Im u = y0, returned as exp(scale) * mantissa.
std::pair<double, cplx> macdonald_line(cplx nu, double z) {
  const cplx saddle = std::asinh(nu / z);
  constexpr double kMinGap = 0.05;  // closest approach of the line to Im u = +-pi/2
  const double y0 = std::clamp(saddle.imag(), -(kPi / 2 - kMinGap), kPi / 2 - kMinGap);
  const double x0 = saddle.real();
  const double strip = kPi / 2 - std::abs(y0);
  const double curvature = std::abs(std::sqrt(cplx(z * z) + nu * nu));
  const double sigma = 1.0 / std::sqrt(std::max(curvature, 1e-300));
  const double h = std::min({0.25, 2.0 * kPi * strip / 45.0, 0.6 * sigma});

  const cplx iy(0.0, y0);
  auto exponent = [&](double x) { return nu * (x + iy) - z * std::cosh(cplx(x, y0)); };
  const double scale = exponent(x0).real();
  auto f = [&](double x) { return std::exp(exponent(x) - scale); };
  const cplx sum = quad::trapezoid_line<cplx>(f, x0, h, 1e-19, 6);
  return {scale, 0.5 * sum};
}

}  // namespace

cplx macdonald_k(cplx order, double z) {
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("macdonald_k: requires z > 0");
  const auto [scale, mant] = macdonald_line(order, z);
  return std::exp(scale) * mant;
}

double macdonald_k(double order, double z) { return macdonald_k(cplx(order, 0.0), z).real(); }

double log_macdonald_k(double order, double z) {
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("log_macdonald_k: requires z > 0");
  const auto [scale, mant] = macdonald_line(cplx(order, 0.0), z);
  return scale + std::log(mant.real());
}

double modified_bessel_i(double order, double r) {
  if (order < 0.0) throw DomainError("modified_bessel_i: order must be >= 0");
  if (r < 0.0) throw DomainError("modified_bessel_i: r must be >= 0");
  if (r == 0.0) return order == 0.0 ? 1.0 : 0.0;
  const double half = 0.5 * r;
  double term = std::exp(order * std::log(half) - std::lgamma(order + 1.0));
  double sum = term;
  const double q = half * half;
  for (int k = 1; k < 500; ++k) {
    term *= q / (k * (k + order));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

}  // namespace gtoda
