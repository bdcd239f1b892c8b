#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "gtoda/errors.hpp"
#include "gtoda/gibbs.hpp"
#include "gtoda/whittaker.hpp"

namespace gtoda {

namespace {
constexpr double kPi = std::numbers::pi;
}

SpectralParam::SpectralParam(std::vector<cplx> v) : values(std::move(v)) {
  for (const auto& z : values)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw ArgumentError("SpectralParam: non-finite entry");
}

SpectralParam SpectralParam::real(const std::vector<double>& re) {
  return from_parts(re, std::vector<double>(re.size(), 0.0));
}

SpectralParam SpectralParam::imaginary(const std::vector<double>& im) {
  return from_parts(std::vector<double>(im.size(), 0.0), im);
}

SpectralParam SpectralParam::from_parts(const std::vector<double>& re, const std::vector<double>& im) {
  if (re.size() != im.size()) throw ArgumentError("SpectralParam: real and imaginary parts differ in length");
  std::vector<cplx> v(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) v[i] = cplx(re[i], im[i]);
  return SpectralParam(std::move(v));
}

bool SpectralParam::purely_imaginary(double tol) const {
  return std::all_of(values.begin(), values.end(), [tol](cplx z) { return std::abs(z.real()) <= tol; });
}

bool SpectralParam::is_real(double tol) const {
  return std::all_of(values.begin(), values.end(), [tol](cplx z) { return std::abs(z.imag()) <= tol; });
}

SpectralParam SpectralParam::operator+(const SpectralParam& o) const {
  if (o.size() != size()) throw ArgumentError("SpectralParam: size mismatch");
  std::vector<cplx> v(size());
  for (std::size_t i = 0; i < size(); ++i) v[i] = values[i] + o.values[i];
  return SpectralParam(std::move(v));
}

SpectralParam SpectralParam::operator-() const {
  std::vector<cplx> v(size());
  for (std::size_t i = 0; i < size(); ++i) v[i] = -values[i];
  return SpectralParam(std::move(v));
}

void ContourSpec::validate() const {
  if (abscissas.empty()) throw ArgumentError("ContourSpec: no abscissas");
  if (!(half_width > 0.0)) throw ArgumentError("ContourSpec: half-width must be positive");
  if (points < 16) throw ArgumentError("ContourSpec: at least 16 points per axis");
}

std::string to_string(PsiMethod m) {
  switch (m) {
    case PsiMethod::closed_form: return "closed-form";
    case PsiMethod::givental: return "givental";
    case PsiMethod::mellin_barnes: return "mellin-barnes";
    case PsiMethod::automatic: return "auto";
  }
  return "auto";
}

PsiMethod parse_psi_method(const std::string& s) {
  if (s == "closed-form") return PsiMethod::closed_form;
  if (s == "givental") return PsiMethod::givental;
  if (s == "mellin-barnes") return PsiMethod::mellin_barnes;
  if (s == "auto") return PsiMethod::automatic;
  throw ArgumentError("unknown method '" + s + "'");
}

cplx givental_phase(const std::vector<double>& t, std::size_t n, const SpectralParam& lambda) {
  if (t.size() != n * (n + 1) / 2 || lambda.size() != n) throw ArgumentError("givental_phase: size mismatch");
  auto T = [&](std::size_t k, std::size_t i) { return t[TriangularArray::offset(k) + i - 1]; };
  cplx f = 0.0;
  double prev = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    double row = 0.0;
    for (std::size_t i = 1; i <= k; ++i) row += T(k, i);
    f += lambda[k - 1] * (row - prev);
    prev = row;
  }
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = 1; i <= k; ++i) f -= std::exp(T(k, i) - T(k + 1, i)) + std::exp(T(k + 1, i + 1) - T(k, i));
  return f;
}

namespace {

struct LogValue {
  double scale = 0.0;  // value = exp(scale) * mantissa
  cplx mantissa;
  double rel_error = 0.0;
};

LogValue closed_form_n2(const std::vector<double>& x, const SpectralParam& l) {
  const cplx s = l[0] + l[1];
  const double r = 2.0 * std::exp(0.5 * (x[1] - x[0]));
  const cplx k = macdonald_k(l[0] - l[1], r);
  return {0.0, 2.0 * std::exp(0.5 * s * (x[0] + x[1])) * k, 1e-13};
}

// Trapezoid lattice in coordinates T = T* + A v, A = (H + I)^{-1/2}, where T* maximizes
// Re F_lambda and H is the Hessian there. The integrand is entire and decays
// double-exponentially, so the lattice sum converges geometrically in 1/h.
LogValue givental_lattice(const std::vector<double>& x, const SpectralParam& l, double h = 0.25, double cut = 38.0) {
  const std::size_t n = x.size();
  const std::size_t d = n * (n - 1) / 2;
  std::vector<double> re(n);
  for (std::size_t i = 0; i < n; ++i) re[i] = l[i].real();
  const CriticalPoint cp = maximize_phase(x, re);
  Eigen::Map<const Eigen::MatrixXd> hess(cp.hessian.data(), static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess);
  const Eigen::VectorXd scale = (es.eigenvalues().array() + 1.0).rsqrt();
  const Eigen::MatrixXd a = es.eigenvectors() * scale.asDiagonal() * es.eigenvectors().transpose();
  const double log_det = scale.array().log().sum();

  std::vector<double> flat = cp.pattern.flat();
  const std::vector<double> center(flat.begin(), flat.begin() + static_cast<long>(d));
  const double peak = cp.value;

  auto eval = [&](const std::vector<int>& v) {
    for (std::size_t j = 0; j < d; ++j) {
      double s = center[j];
      for (std::size_t k = 0; k < d; ++k) s += a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) * h * v[k];
      flat[j] = s;
    }
    return givental_phase(flat, n, l);
  };
  auto key = [](const std::vector<int>& v) {
    std::uint64_t k = 0;
    for (int c : v) k = k * 4099u + static_cast<std::uint64_t>(c + 2048);
    return k;
  };

  std::unordered_map<std::uint64_t, char> seen;
  std::vector<std::vector<int>> stack{std::vector<int>(d, 0)};
  seen[key(stack.back())] = 1;
  cplx sum = 0.0, coarse = 0.0;
  std::size_t nodes = 0;
  while (!stack.empty()) {
    const std::vector<int> v = stack.back();
    stack.pop_back();
    const cplx f = eval(v);
    if (f.real() - peak < -cut) continue;
    ++nodes;
    const cplx term = std::exp(f - peak);
    sum += term;
    if (std::all_of(v.begin(), v.end(), [](int c) { return c % 2 == 0; })) coarse += term;
    for (std::size_t j = 0; j < d; ++j)
      for (int s : {-1, 1}) {
        std::vector<int> w = v;
        w[j] += s;
        if (std::abs(w[j]) > 2000) throw NumericError("givental: integration region too large");
        if (seen.emplace(key(w), 1).second) stack.push_back(std::move(w));
      }
  }
  (void)nodes;
  const double cell = std::pow(h, static_cast<double>(d));
  const cplx fine = sum * cell;
  const cplx crude = coarse * cell * std::pow(2.0, static_cast<double>(d));
  const double mag = std::abs(fine);
  return {peak + log_det, fine, mag > 0 ? std::abs(fine - crude) / mag : 1.0};
}

void check_contour(const SpectralParam& l, double a) {
  for (const auto& z : l.values)
    if (!(a < z.real())) throw ContourError("mellin-barnes: contour abscissa must lie left of every Re lambda");
}

double default_abscissa(const SpectralParam& l) {
  double m = l[0].real();
  for (const auto& z : l.values) m = std::min(m, z.real());
  return m - 1.0;
}

LogValue mellin_barnes_n2(const std::vector<double>& x, const SpectralParam& l, const ContourSpec& c) {
  const double a = c.abscissa(0);
  check_contour(l, a);
  auto integrand = [&](double v) {
    const cplx g(a, v);
    return std::exp(x[0] * (l[0] + l[1] - g) + log_gamma_complex(l[0] - g) + log_gamma_complex(l[1] - g) + g * x[1]);
  };
  // U-doubling: the reported value uses [-U, U]; the doubled window bounds truncation
  const double hv = 2.0 * c.half_width / static_cast<double>(c.points - 1);
  cplx inner = 0.0, outer = 0.0;
  const long half = static_cast<long>(c.points - 1) / 2;
  for (long k = -2 * half; k <= 2 * half; ++k) {
    const cplx f = integrand(hv * static_cast<double>(k));
    (std::abs(k) <= half ? inner : outer) += f;
  }
  const cplx val = inner * hv / (2.0 * kPi);
  const double mag = std::abs(val);
  return {0.0, val, mag > 0 ? std::abs(outer * hv / (2.0 * kPi)) / mag + 1e-14 : 1.0};
}

LogValue mellin_barnes_n3(const std::vector<double>& x, const SpectralParam& l, const ContourSpec& c) {
  const double a = c.abscissa(0);
  check_contour(l, a);
  const double hv = 2.0 * c.half_width / static_cast<double>(c.points - 1);
  const long half = static_cast<long>(c.points - 1) / 2;
  const long span = 2 * half;  // doubled window for the truncation estimate
  const double r = 2.0 * std::exp(0.5 * (x[2] - x[1]));
  const double s23 = x[1] + x[2];
  const cplx lsum = l[0] + l[1] + l[2];

  std::vector<cplx> phi(static_cast<std::size_t>(2 * span + 1));
  for (long k = -span; k <= span; ++k) {
    const cplx g(a, hv * static_cast<double>(k));
    cplx lg = -x[0] * g + 0.5 * g * s23;
    for (std::size_t i = 0; i < 3; ++i) lg += log_gamma_complex(l[i] - g);
    phi[static_cast<std::size_t>(k + span)] = std::exp(lg);
  }
  // coupling in tau = v1 - v2: Sklyanin factor tau sinh(pi tau)/pi times K_{i tau}(r)
  std::vector<double> coupling(static_cast<std::size_t>(2 * span + 1));
  for (long k = 0; k <= 2 * span; ++k) {
    const double tau = hv * static_cast<double>(k);
    const double w = tau == 0.0 ? 0.0 : tau * std::sinh(kPi * tau) / kPi * macdonald_k(cplx(0.0, tau), r).real();
    coupling[static_cast<std::size_t>(k)] = std::isfinite(w) ? w : 0.0;
  }
  cplx inner = 0.0, outer = 0.0;
  for (long i = -span; i <= span; ++i)
    for (long j = -span; j <= span; ++j) {
      const cplx f = phi[static_cast<std::size_t>(i + span)] * phi[static_cast<std::size_t>(j + span)] *
                     coupling[static_cast<std::size_t>(std::abs(i - j))];
      (std::abs(i) <= half && std::abs(j) <= half ? inner : outer) += f;
    }
  // s_2 normalization 1/((2 pi)^2 2!) and the factor 2 of psi^(2)
  const cplx pref = std::exp(x[0] * lsum) * hv * hv * 2.0 / (8.0 * kPi * kPi);
  const cplx val = inner * pref;
  const double mag = std::abs(val);
  return {0.0, val, mag > 0 ? std::abs(outer * pref) / mag + 1e-13 : 1.0};
}

LogValue evaluate(const std::vector<double>& x, const SpectralParam& l, PsiMethod method, const ContourSpec* contour,
                  PsiMethod& used) {
  const std::size_t n = x.size();
  if (n == 0 || l.size() != n) throw ArgumentError("whittaker_psi: x and lambda must have the same positive length");
  for (double v : x)
    if (!std::isfinite(v)) throw ArgumentError("whittaker_psi: non-finite x");
  if (method == PsiMethod::automatic) method = n <= 2 ? PsiMethod::closed_form : PsiMethod::givental;
  used = method;
  if (n == 1) return {0.0, std::exp(l[0] * x[0]), 1e-15};
  if (n > 3) throw UnsupportedSize("whittaker_psi: N <= 3 only");
  ContourSpec spec;
  if (contour) {
    contour->validate();
    spec = *contour;
  } else {
    spec.abscissas = {default_abscissa(l)};
  }
  switch (method) {
    case PsiMethod::closed_form:
      if (n != 2) throw UnsupportedSize("whittaker_psi: closed form only for N <= 2");
      return closed_form_n2(x, l);
    case PsiMethod::givental: return givental_lattice(x, l);
    case PsiMethod::mellin_barnes: return n == 2 ? mellin_barnes_n2(x, l, spec) : mellin_barnes_n3(x, l, spec);
    default: break;
  }
  throw ArgumentError("whittaker_psi: bad method");
}

}  // namespace

PsiValue whittaker_psi(const std::vector<double>& x, const SpectralParam& lambda, PsiMethod method,
                       const ContourSpec* contour) {
  PsiMethod used = method;
  const LogValue lv = evaluate(x, lambda, method, contour, used);
  PsiValue out;
  out.value = std::exp(lv.scale) * lv.mantissa;
  out.est_error = lv.rel_error * std::abs(out.value);
  out.method = used;
  return out;
}

double log_whittaker_psi(const std::vector<double>& x, const std::vector<double>& nu) {
  const SpectralParam l = SpectralParam::real(nu);
  if (x.size() == 2) {
    const double r = 2.0 * std::exp(0.5 * (x[1] - x[0]));
    return std::log(2.0) + 0.5 * (nu[0] + nu[1]) * (x[0] + x[1]) + log_macdonald_k(nu[0] - nu[1], r);
  }
  PsiMethod used = PsiMethod::givental;
  const LogValue lv = evaluate(x, l, x.size() == 1 ? PsiMethod::closed_form : PsiMethod::givental, nullptr, used);
  return lv.scale + std::log(lv.mantissa.real());
}

}  // namespace gtoda
