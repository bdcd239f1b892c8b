#include <unsupported/Eigen/MatrixFunctions>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "gtoda/errors.hpp"
#include "gtoda/quadrature.hpp"
#include "gtoda/rng.hpp"
#include "gtoda/whittaker.hpp"

namespace gtoda {

namespace {
constexpr double kPi = std::numbers::pi;

// 1 / (Gamma(a) Gamma(-a)) = -a sin(pi a) / pi, entire in a
cplx inv_gamma_pair(cplx a) { return -a * std::sin(kPi * a) / kPi; }

// tau sinh(pi tau)/pi, i.e. 1/|Gamma(i tau)|^2
double sinh_weight(double tau) { return tau == 0.0 ? 0.0 : tau * std::sinh(kPi * tau) / kPi; }

// J(r, t) = int_R K_{i tau}(r) e^{-tau^2 t/4} tau sinh(pi tau)/pi d tau.
// For t not too small, insert K_{i tau}(r) = int_0^inf e^{-r cosh u} cos(tau u) du and do the
// Gaussian tau-integral in closed form; the e^{pi^2/t} cancellation is harmless there.
double theta_kernel_n2(double r, double t) {
  if (t >= 0.8) {
    const double top = std::sqrt(kPi * kPi + 45.0 * t);
    auto f = [&](double u) {
      const double w = 2.0 * kPi * u / t;
      return std::exp(-r * std::cosh(u) + (kPi * kPi - u * u) / t) * (kPi * std::cos(w) - u * std::sin(w));
    };
    std::vector<double> br;
    for (double b = 0.0; b < top; b += 0.25) br.push_back(b);
    br.push_back(top);
    const double a = t / 4.0;
    // the result cancels far below the integrand for large r; tolerance against its peak
    const double peak = (kPi + top) * std::exp(-r + kPi * kPi / t);
    return std::sqrt(kPi / a) / (2.0 * a * kPi) * quad::integrate_pieces<double>(f, br, 1e-15 * peak, 1e-13).value;
  }
  const double top = std::sqrt(4.0 * 45.0 / t) + 2.0;
  auto f = [&](double tau) {
    return macdonald_k(cplx(0.0, tau), r).real() * std::exp(-tau * tau * t / 4.0) * sinh_weight(tau);
  };
  std::vector<double> breaks;
  for (double b = 0.0; b < top; b += 1.0) breaks.push_back(b);
  breaks.push_back(top);
  return 2.0 * quad::integrate_pieces<double>(f, breaks, 1e-15, 1e-11).value;
}

}  // namespace

double sklyanin_density(const SpectralParam& lambda) {
  const std::size_t n = lambda.size();
  if (n == 0) throw ArgumentError("sklyanin_density: empty lambda");
  cplx prod = 1.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) prod *= inv_gamma_pair(lambda[j] - lambda[k]);
  double norm = 1.0;
  for (std::size_t k = 1; k <= n; ++k) norm *= 2.0 * kPi * static_cast<double>(k);
  return prod.real() / norm;
}

double theta_density(const std::vector<double>& x, double t) {
  if (!(t > 0.0)) throw ArgumentError("theta_density: t must be positive");
  if (x.size() == 1) return std::exp(-x[0] * x[0] / (2.0 * t)) / std::sqrt(2.0 * kPi * t);
  if (x.size() != 2) throw UnsupportedSize("theta_density: N <= 2 only");
  const double s = x[0] + x[1];
  const double r = 2.0 * std::exp(0.5 * (x[1] - x[0]));
  const double v = std::sqrt(4.0 * kPi / t) * std::exp(-s * s / (4.0 * t)) * theta_kernel_n2(r, t) / (8.0 * kPi * kPi);
  if (v < -1e-12) throw NumericError("theta_density: negative value, quadrature unreliable here");
  return std::max(v, 0.0);
}

double entrance_density(const std::vector<double>& x, double t, const std::vector<double>& nu) {
  if (x.size() != nu.size()) throw ArgumentError("entrance_density: size mismatch");
  double nn = 0.0;
  for (double v : nu) nn += v * v;
  const double th = theta_density(x, t);
  if (th == 0.0) return 0.0;
  return std::exp(-0.5 * nn * t + log_whittaker_psi(x, nu)) * th;
}

EntranceMarginalN2::EntranceMarginalN2(double t, double d_lo, double d_hi, double step)
    : t_(t), d_lo_(d_lo), step_(step) {
  if (!(t > 0.0) || !(step > 0.0) || !(d_hi > d_lo)) throw ArgumentError("EntranceMarginalN2: bad grid");
  const auto m = static_cast<std::size_t>(std::llround((d_hi - d_lo) / step));
  f_.resize(m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    const double r = 2.0 * std::exp(-0.5 * d_at(k));
    // density of d = x1 - x2: the sum x1 + x2 is N(0, 2t) independently
    f_[k] = macdonald_k(0.0, r) * theta_kernel_n2(r, t) / (2.0 * kPi);
  }
}

double EntranceMarginalN2::total_mass() const {
  double s = 0.0;
  for (std::size_t k = 0; k < f_.size(); ++k) s += (k == 0 || k + 1 == f_.size() ? 0.5 : 1.0) * f_[k];
  return s * step_;
}

double EntranceMarginalN2::cdf_x1(double u) const {
  double s = 0.0;
  const double sd = std::sqrt(2.0 * t_);
  for (std::size_t k = 0; k < f_.size(); ++k) {
    const double w = (k == 0 || k + 1 == f_.size() ? 0.5 : 1.0) * f_[k];
    s += w * normal_cdf((2.0 * u - d_at(k)) / sd);
  }
  return s * step_ / total_mass();
}

cplx conditional_mgf(const std::vector<double>& x, const std::vector<double>& nu, const SpectralParam& lambda) {
  if (lambda.size() != nu.size()) throw ArgumentError("conditional_mgf: size mismatch");
  const SpectralParam base = SpectralParam::real(nu);
  return whittaker_psi(x, base + lambda).value / whittaker_psi(x, base).value;
}

double vandermonde(const std::vector<double>& x) {
  double h = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) h *= x[i] - x[j];
  return h;
}

double superfactorial(std::size_t n) {
  double p = 1.0, f = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    f *= static_cast<double>(k);
    p *= f;
  }
  return p;
}

double alternating_exp_ratio(const std::vector<double>& x, const std::vector<double>& lambda) {
  const std::size_t n = x.size();
  if (n == 0 || lambda.size() != n) throw ArgumentError("alternating_exp_ratio: size mismatch");
  // row i holds the divided differences [l_1..l_j] e^{l x_i}: the first row of exp(x_i J),
  // J bidiagonal with diagonal lambda and unit superdiagonal
  Eigen::MatrixXd jm = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    jm(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = lambda[j];
    if (j + 1 < n) jm(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j + 1)) = 1.0;
  }
  Eigen::MatrixXd dd(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::MatrixXd e = (x[i] * jm).exp();
    dd.row(static_cast<Eigen::Index>(i)) = e.row(0);
  }
  const double sign = (n * (n - 1) / 2) % 2 ? -1.0 : 1.0;
  return sign * dd.determinant();
}

double dh_mgf(const std::vector<double>& x, const std::vector<double>& lambda) {
  const double h = vandermonde(x);
  if (h == 0.0) throw DomainError("dh_mgf: x must have distinct entries");
  return superfactorial(x.size()) * alternating_exp_ratio(x, lambda) / h;
}

ContourSpec default_moment_contour(std::size_t n) {
  ContourSpec c;
  c.abscissas.assign(n, -0.5);
  c.half_width = 30.0;
  c.points = n == 1 ? 2001 : 401;
  return c;
}

double moment_transform(double s, double t, std::size_t n, const ContourSpec& contour) {
  if (!(s > 0.0) || !(t > 0.0)) throw ArgumentError("moment_transform: s and t must be positive");
  if (n < 1 || n > 2) throw UnsupportedSize("moment_transform: N <= 2 only");
  contour.validate();
  for (std::size_t i = 0; i < n; ++i)
    if (!(contour.abscissa(i) < 0.0)) throw ContourError("moment_transform: abscissas must be negative");
  const double ls = std::log(s);
  const double h = 2.0 * contour.half_width / static_cast<double>(contour.points - 1);
  const long half = static_cast<long>(contour.points - 1) / 2;
  const auto nodes = static_cast<std::size_t>(2 * half + 1);
  // per-axis factor s^l Gamma(-l)^N e^{l^2 t/2}
  auto axis = [&](double a) {
    std::vector<cplx> f(nodes);
    for (long k = -half; k <= half; ++k) {
      const cplx l(a, h * static_cast<double>(k));
      f[static_cast<std::size_t>(k + half)] =
          std::exp(l * ls + static_cast<double>(n) * log_gamma_complex(-l) + 0.5 * l * l * t);
    }
    return f;
  };
  if (n == 1) {
    const auto f = axis(contour.abscissa(0));
    cplx sum = 0.0;
    for (const auto& v : f) sum += v;
    return (sum * h / (2.0 * kPi)).real();
  }
  const auto f1 = axis(contour.abscissa(0));
  const auto f2 = axis(contour.abscissa(1));
  const double da = contour.abscissa(0) - contour.abscissa(1);
  std::vector<cplx> coupling(2 * nodes - 1);
  for (long k = -2 * half; k <= 2 * half; ++k)
    coupling[static_cast<std::size_t>(k + 2 * half)] = inv_gamma_pair(cplx(da, h * static_cast<double>(k)));
  cplx sum = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    cplx row = 0.0;
    for (std::size_t j = 0; j < nodes; ++j) row += f2[j] * coupling[i + 2 * static_cast<std::size_t>(half) - j];
    sum += f1[i] * row;
  }
  return (sum * h * h / (8.0 * kPi * kPi)).real();
}

double hartman_watson_theta(double r, double t) {
  if (!(r > 0.0)) throw ArgumentError("hartman_watson_theta: r must be positive");
  if (!(t >= 0.3)) throw DomainError("hartman_watson_theta: t >= 0.3 required");
  // the Gaussian factor wins over sinh(pi u) beyond u_max
  const double top = (kPi / 2.0 + std::sqrt(kPi * kPi / 4.0 + 90.0 * t)) / t;
  auto f = [&](double u) {
    return macdonald_k(cplx(0.0, u), r).real() * std::exp(-0.5 * u * u * t) * u * std::sinh(kPi * u);
  };
  std::vector<double> breaks;
  for (double b = 0.0; b < top; b += 1.0) breaks.push_back(b);
  breaks.push_back(top);
  return quad::integrate_pieces<double>(f, breaks, 1e-14, 1e-11).value / (kPi * kPi);
}

double hartman_watson_laplace(double r, double nu, double t0, double t1) {
  if (!(t0 >= 0.3) || !(t1 > t0)) throw DomainError("hartman_watson_laplace: need 0.3 <= t0 < t1");
  auto g = [&](double t) { return std::exp(-0.5 * nu * nu * t) * hartman_watson_theta(r, t); };
  std::vector<double> breaks{t0};
  for (double b = 1.0; b < t1; b *= 2.0)
    if (b > t0) breaks.push_back(b);
  breaks.push_back(t1);
  return quad::integrate_pieces<double>(g, breaks, 1e-12, 1e-9).value;
}

namespace {

double gig_log_density(double mu, double z, double u) {
  return mu * u - std::cosh(u) / z - std::log(2.0) - log_macdonald_k(mu, 1.0 / z);
}

}  // namespace

double gig_density(double mu, double z, double u) {
  if (!(z > 0.0)) throw ArgumentError("gig_density: z must be positive");
  return std::exp(gig_log_density(mu, z, u));
}

double gig_cdf(double mu, double z, double u) {
  if (!(z > 0.0)) throw ArgumentError("gig_cdf: z must be positive");
  const double mode = std::asinh(mu * z);
  const double peak = gig_log_density(mu, z, mode);
  double lo = mode;
  double step = 1.0 / std::sqrt(std::cosh(mode) / z);
  while (gig_log_density(mu, z, lo) - peak > -60.0) lo -= step;
  if (u <= lo) return 0.0;
  auto f = [&](double v) { return gig_density(mu, z, v); };
  std::vector<double> breaks;
  for (double b = lo; b < u; b += step) breaks.push_back(b);
  breaks.push_back(u);
  return std::min(1.0, quad::integrate_pieces<double>(f, breaks, 1e-15, 1e-12).value);
}

}  // namespace gtoda
