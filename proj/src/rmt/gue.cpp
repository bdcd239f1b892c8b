#include "gtoda/rmt.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "gtoda/errors.hpp"
#include "gtoda/parallel.hpp"

namespace gtoda {

namespace {

// number of eigenvalues strictly below x
std::size_t sturm_count(const std::vector<double>& d, const std::vector<double>& e2, double x) {
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    q = d[i] - x - (i > 0 ? e2[i - 1] / q : 0.0);
    if (q == 0.0) q = -std::numeric_limits<double>::epsilon() * (std::abs(x) + 1.0);
    if (q < 0.0) ++count;
  }
  return count;
}

}  // namespace

std::vector<double> eig_sym_tridiag(const std::vector<double>& diag, const std::vector<double>& offdiag) {
  const std::size_t n = diag.size();
  if (n == 0 || offdiag.size() + 1 != n) throw ArgumentError("eig_sym_tridiag: need |offdiag| = |diag| - 1 >= 0");
  std::vector<double> e2(offdiag.size());
  for (std::size_t i = 0; i < offdiag.size(); ++i) e2[i] = offdiag[i] * offdiag[i];
  double lo = diag[0], hi = diag[0];
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(offdiag[i - 1]) : 0.0) + (i + 1 < n ? std::abs(offdiag[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  const double pad = 1e-12 * (std::abs(lo) + std::abs(hi) + 1.0);
  lo -= pad;
  hi += pad;
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k-th smallest: smallest x with count(x) > k
    double a = lo, b = hi;
    for (int it = 0; it < 200 && b - a > 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(a) + std::abs(b)); ++it) {
      const double mid = 0.5 * (a + b);
      (sturm_count(diag, e2, mid) > k ? b : a) = mid;
    }
    out[n - 1 - k] = 0.5 * (a + b);
  }
  return out;
}

std::vector<double> sample_gue_spectrum(std::size_t n, RngStream& rng) {
  if (n == 0) throw ArgumentError("sample_gue_spectrum: n must be positive");
  std::vector<double> d(n), e(n - 1);
  for (auto& v : d) v = rng.normal();
  // off-diagonal k: chi_{2k}/sqrt(2), i.e. the square root of a Gamma(k, 1) variable
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t k = n - 1 - i;
    double g = 0.0;
    for (std::size_t j = 0; j < k; ++j) g -= std::log(1.0 - rng.uniform());
    e[i] = std::sqrt(g);
  }
  return eig_sym_tridiag(d, e);
}

std::vector<double> sample_gue_spectrum_dense(std::size_t n, RngStream& rng) {
  if (n == 0 || n > 3) throw UnsupportedSize("sample_gue_spectrum_dense: 1 <= n <= 3");
  const auto sn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd m(sn, sn);
  for (Eigen::Index i = 0; i < sn; ++i) {
    m(i, i) = rng.normal();
    for (Eigen::Index j = i + 1; j < sn; ++j) {
      const double re = rng.normal(), im = rng.normal();
      m(i, j) = std::complex<double>(re, im) / std::sqrt(2.0);
      m(j, i) = std::conj(m(i, j));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<double> largest_eigenvalue_samples(std::size_t n, std::size_t reps, std::uint64_t seed) {
  return parallel_map(reps, [&](std::size_t r) {
    RngStream rng(seed, r);
    return sample_gue_spectrum(n, rng).front();
  });
}

}  // namespace gtoda
