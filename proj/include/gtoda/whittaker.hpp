#pragma once

#include <string>
#include <vector>

#include "gtoda/special.hpp"

namespace gtoda {

/// Spectral parameter lambda in C^N.
struct SpectralParam {
  std::vector<cplx> values;

  SpectralParam() = default;
  explicit SpectralParam(std::vector<cplx> v);
  static SpectralParam real(const std::vector<double>& re);
  static SpectralParam imaginary(const std::vector<double>& im);
  static SpectralParam from_parts(const std::vector<double>& re, const std::vector<double>& im);

  std::size_t size() const noexcept { return values.size(); }
  cplx operator[](std::size_t i) const { return values[i]; }
  bool purely_imaginary(double tol = 0.0) const;
  bool is_real(double tol = 0.0) const;
  SpectralParam operator+(const SpectralParam& o) const;
  SpectralParam operator-() const;
};

/// Vertical integration lines Re = abscissas[i], truncated at |Im| <= half_width.
struct ContourSpec {
  std::vector<double> abscissas;
  double half_width = 30.0;
  std::size_t points = 400;

  void validate() const;
  double abscissa(std::size_t i) const { return abscissas.size() == 1 ? abscissas[0] : abscissas.at(i); }
};

enum class PsiMethod { closed_form, givental, mellin_barnes, automatic };
std::string to_string(PsiMethod m);
PsiMethod parse_psi_method(const std::string& s);

struct PsiValue {
  cplx value;
  double est_error = 0.0;  ///< absolute
  PsiMethod method = PsiMethod::automatic;
};

/// gl_N Whittaker function psi_lambda(x).
///  closed-form: N = 1, 2;  givental: N = 2, 3 (lattice quadrature of e^{F_lambda} around the
///  maximizer of Re F_lambda);  mellin-barnes: N = 2, 3;  automatic: closed form when N <= 2,
///  otherwise givental.
PsiValue whittaker_psi(const std::vector<double>& x, const SpectralParam& lambda,
                       PsiMethod method = PsiMethod::automatic, const ContourSpec* contour = nullptr);

/// log psi_nu(x) for real nu, N <= 3; stays finite where psi under/overflows.
double log_whittaker_psi(const std::vector<double>& x, const std::vector<double>& nu);

/// The Givental phase F_lambda(T) for a pattern given row by row (bottom row = x).
cplx givental_phase(const std::vector<double>& flat_pattern, std::size_t n, const SpectralParam& lambda);

/// Sklyanin density s_N at lambda = i*u, as a density in u (the (2 pi i)^N factor absorbs d lambda).
double sklyanin_density(const SpectralParam& lambda);

/// theta_t(x) for N = 1, 2.
double theta_density(const std::vector<double>& x, double t);

/// Density of the entrance law mu^nu_t: exp(-|nu|^2 t/2) psi_nu(x) theta_t(x).
double entrance_density(const std::vector<double>& x, double t, const std::vector<double>& nu);

/// N = 2, nu = 0: law of x_1 under mu_t, via the density f of d = x_1 - x_2 on a grid.
class EntranceMarginalN2 {
 public:
  explicit EntranceMarginalN2(double t, double d_lo = -8.0, double d_hi = 16.0, double step = 0.04);
  double total_mass() const;
  double cdf_x1(double u) const;
  double density_d(std::size_t k) const { return f_[k]; }
  double d_at(std::size_t k) const { return d_lo_ + step_ * static_cast<double>(k); }
  std::size_t nodes() const { return f_.size(); }

 private:
  double t_, d_lo_, step_;
  std::vector<double> f_;
};

/// psi_{nu+lambda}(x) / psi_nu(x).
cplx conditional_mgf(const std::vector<double>& x, const std::vector<double>& nu, const SpectralParam& lambda);

/// Zero-temperature analogue: (prod k!) sum_sigma sgn(sigma) e^{(sigma lambda, x)} / (h(x) h(lambda)),
/// evaluated through divided differences so coinciding lambdas are handled exactly.
double dh_mgf(const std::vector<double>& x, const std::vector<double>& lambda);

/// Alternating sum over permutations divided by h(lambda) (the limit in the asym1 formula).
double alternating_exp_ratio(const std::vector<double>& x, const std::vector<double>& lambda);

/// h(x) = prod_{i<j} (x_i - x_j).
double vandermonde(const std::vector<double>& x);
double superfactorial(std::size_t n);  ///< prod_{k=1}^{n-1} k!

/// Moment formula E exp(-s Z^N_t) by contour quadrature, N = 1, 2. Default abscissa -0.5.
double moment_transform(double s, double t, std::size_t n, const ContourSpec& contour);
ContourSpec default_moment_contour(std::size_t n);

/// Hartman-Watson theta_r(t) for t >= 0.3.
double hartman_watson_theta(double r, double t);
/// int_{t0}^{t1} exp(-nu^2 t/2) theta_r(t) dt.
double hartman_watson_laplace(double r, double nu, double t0 = 0.3, double t1 = 40.0);

/// Generalized inverse Gaussian / cosh law: (1/2) K_mu(1/z)^{-1} e^{mu u} exp(-cosh(u)/z).
double gig_density(double mu, double z, double u);
double gig_cdf(double mu, double z, double u);

}  // namespace gtoda
