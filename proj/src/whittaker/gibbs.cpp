#include "gtoda/gibbs.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "gtoda/errors.hpp"
#include "gtoda/whittaker.hpp"

namespace gtoda {

namespace {

// One exponential term e^{T_p - T_q} of the Givental potential; an index < 0 refers to the
// bottom row entry x_{-index-1}.
struct ExpTerm {
  int p, q;
};

std::vector<ExpTerm> potential_terms(std::size_t n) {
  auto idx = [&](std::size_t k, std::size_t i) -> int {
    const int flat = static_cast<int>(TriangularArray::offset(k) + i - 1);
    return k == n ? -static_cast<int>(i) : flat;
  };
  std::vector<ExpTerm> terms;
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = 1; i <= k; ++i) {
      terms.push_back({idx(k, i), idx(k + 1, i)});
      terms.push_back({idx(k + 1, i + 1), idx(k, i)});
    }
  return terms;
}

double entry(const std::vector<double>& free, const std::vector<double>& x, int j) {
  return j >= 0 ? free[static_cast<std::size_t>(j)] : x[static_cast<std::size_t>(-j - 1)];
}

// Linear coefficient of free entry T_{k,i} in F_nu: nu_k - nu_{k+1}.
std::vector<double> linear_coeffs(std::size_t n, const std::vector<double>& nu) {
  std::vector<double> c(n * (n - 1) / 2);
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = 1; i <= k; ++i) c[TriangularArray::offset(k) + i - 1] = nu[k - 1] - nu[k];
  return c;
}

double phi(const std::vector<double>& free, const std::vector<double>& x, const std::vector<ExpTerm>& terms,
           const std::vector<double>& c) {
  double s = 0.0;
  for (const auto& t : terms) s += std::exp(entry(free, x, t.p) - entry(free, x, t.q));
  for (std::size_t j = 0; j < free.size(); ++j) s -= c[j] * free[j];
  return s;
}

}  // namespace

GibbsPatternLaw::GibbsPatternLaw(std::vector<double> xv, std::vector<double> nuv) : x(std::move(xv)), nu(std::move(nuv)) {
  if (x.empty() || x.size() != nu.size()) throw ArgumentError("GibbsPatternLaw: x and nu must have the same positive length");
}

double GibbsPatternLaw::log_weight(const TriangularArray& t) const {
  return givental_phase(t.flat(), n(), SpectralParam::real(nu)).real();
}

double GibbsPatternLaw::f0(const TriangularArray& t) const {
  return givental_phase(t.flat(), n(), SpectralParam::real(std::vector<double>(n(), 0.0))).real();
}

double GibbsPatternLaw::s_nu(const TriangularArray& t) const { return log_weight(t) - f0(t); }

CriticalPoint maximize_phase(const std::vector<double>& x, const std::vector<double>& nu) {
  const std::size_t n = x.size();
  if (n == 0 || nu.size() != n) throw ArgumentError("maximize_phase: size mismatch");
  for (double v : x)
    if (!std::isfinite(v)) throw ArgumentError("maximize_phase: non-finite x");
  CriticalPoint cp;
  cp.pattern = TriangularArray(n);
  for (std::size_t i = 1; i <= n; ++i) cp.pattern(n, i) = x[i - 1];
  if (n == 1) {
    cp.value = nu[0] * x[0];
    return cp;
  }
  const std::size_t d = n * (n - 1) / 2;
  const auto terms = potential_terms(n);
  const auto c = linear_coeffs(n, nu);
  // start in the middle of the interlacing box
  std::vector<double> t(d);
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = 1; i <= k; ++i) t[TriangularArray::offset(k) + i - 1] = 0.5 * (x[i - 1] + x[i + n - k - 1]);

  Eigen::VectorXd g(d);
  Eigen::MatrixXd h(d, d);
  auto assemble = [&](const std::vector<double>& v) {
    g.setZero();
    h.setZero();
    for (const auto& term : terms) {
      const double e = std::exp(entry(v, x, term.p) - entry(v, x, term.q));
      if (term.p >= 0) {
        g(term.p) += e;
        h(term.p, term.p) += e;
      }
      if (term.q >= 0) {
        g(term.q) -= e;
        h(term.q, term.q) += e;
      }
      if (term.p >= 0 && term.q >= 0) {
        h(term.p, term.q) -= e;
        h(term.q, term.p) -= e;
      }
    }
    for (std::size_t j = 0; j < d; ++j) g(static_cast<Eigen::Index>(j)) -= c[j];
  };

  double f = phi(t, x, terms, c);
  int it = 0;
  for (; it < 200; ++it) {
    assemble(t);
    if (g.lpNorm<Eigen::Infinity>() <= 1e-11) break;
    const Eigen::VectorXd step = h.llt().solve(-g);
    const double slope = g.dot(step);
    if (-slope <= 1e-15 * (1.0 + std::abs(f))) {
      // predicted decrease is below the rounding of f, so Armijo would accept a null step;
      // plain Newton steps still shrink the gradient until its own floor
      const std::vector<double> prev = t;
      const double before = g.lpNorm<Eigen::Infinity>();
      for (std::size_t j = 0; j < d; ++j) t[j] += step(static_cast<Eigen::Index>(j));
      assemble(t);
      if (g.lpNorm<Eigen::Infinity>() < before) {
        f = phi(t, x, terms, c);
        continue;
      }
      t = prev;
      assemble(t);
      break;
    }
    double a = 1.0;
    std::vector<double> trial(d);
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t j = 0; j < d; ++j) trial[j] = t[j] + a * step(static_cast<Eigen::Index>(j));
      const double ft = phi(trial, x, terms, c);
      if (std::isfinite(ft) && ft <= f + 1e-4 * a * slope) {
        t = trial;
        f = ft;
        moved = true;
        break;
      }
      a *= 0.5;
    }
    if (!moved) {
      // at the rounding floor the Armijo test cannot succeed; take the full step once more
      for (std::size_t j = 0; j < d; ++j) t[j] += step(static_cast<Eigen::Index>(j));
      f = phi(t, x, terms, c);
      assemble(t);
      break;
    }
  }
  if (it >= 200) throw NumericError("maximize_phase: Newton did not converge in 200 iterations");
  cp.iterations = it;
  cp.grad_norm = g.lpNorm<Eigen::Infinity>();
  cp.hessian.assign(h.data(), h.data() + d * d);
  for (std::size_t j = 0; j < d; ++j) cp.pattern.flat()[j] = t[j];
  cp.value = -f;
  // F_nu also carries the x-only linear term nu_N * sum(x)
  double xs = 0.0;
  for (double v : x) xs += v;
  cp.value += nu[n - 1] * xs;
  const double mean = xs / static_cast<double>(n);
  for (std::size_t k = 1; k < n; ++k)
    cp.row_mean_residual = std::max(cp.row_mean_residual, std::abs(cp.pattern.row_sum(k) / static_cast<double>(k) - mean));
  if (!std::isfinite(cp.grad_norm) || cp.grad_norm > 1e-6)
    throw NumericError("maximize_phase: failed to reach a critical point");
  return cp;
}

CriticalPoint critical_point(const std::vector<double>& x) { return maximize_phase(x, std::vector<double>(x.size(), 0.0)); }

std::vector<double> rho(std::size_t k) {
  std::vector<double> r(k);
  for (std::size_t i = 0; i < k; ++i) r[i] = 0.5 * static_cast<double>(k - 1) - static_cast<double>(i);
  return r;
}

double gt_volume(const std::vector<double>& x) {
  if (x.empty()) throw ArgumentError("gt_volume: empty x");
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    if (x[i] < x[i + 1]) throw DomainError("gt_volume: x must be non-increasing");
  return vandermonde(x) / superfactorial(x.size());
}

McEstimate gt_volume_mc(const std::vector<double>& x, std::size_t samples, std::uint64_t seed) {
  const std::size_t n = x.size();
  if (n < 2 || samples == 0) throw ArgumentError("gt_volume_mc: need N >= 2 and samples > 0");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (x[i] < x[i + 1]) throw DomainError("gt_volume_mc: x must be non-increasing");
  // entry (k,i) lies in [x_{i+N-k}, x_i]
  double box = 1.0;
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = 1; i <= k; ++i) box *= x[i - 1] - x[i + n - k - 1];
  if (box == 0.0) return {0.0, 0.0};
  RngStream rng(seed, 0);
  TriangularArray t(n);
  for (std::size_t i = 1; i <= n; ++i) t(n, i) = x[i - 1];
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t k = 1; k < n; ++k)
      for (std::size_t i = 1; i <= k; ++i) {
        const double lo = x[i + n - k - 1], hi = x[i - 1];
        t(k, i) = lo + (hi - lo) * rng.uniform();
      }
    if (is_gelfand_tsetlin(t)) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  return {box * p, box * std::sqrt(p * (1 - p) / static_cast<double>(samples))};
}

namespace {

SigmaSamples sample_sigma_n2(const GibbsPatternLaw& law, RngStream& rng, std::size_t count) {
  const double x1 = law.x[0], x2 = law.x[1];
  const double mid = 0.5 * (x1 + x2);
  // in u = T11 - mid the log density is mu*u - cosh(u)/z
  const double mu = law.nu[0] - law.nu[1];
  const double inv_z = 2.0 * std::exp(0.5 * (x2 - x1));
  auto logd = [&](double u) { return mu * u - inv_z * std::cosh(u); };
  const double mode = std::asinh(mu / inv_z);
  const double peak = logd(mode);
  const double width = 1.0 / std::sqrt(inv_z * std::cosh(mode));
  double lo = mode, hi = mode;
  while (logd(lo) - peak > -60.0) lo -= 0.5 * width;
  while (logd(hi) - peak > -60.0) hi += 0.5 * width;
  const std::size_t m = 40000;
  const double h = (hi - lo) / static_cast<double>(m);
  std::vector<double> cdf(m + 1, 0.0);
  double prev = std::exp(logd(lo) - peak);
  for (std::size_t j = 1; j <= m; ++j) {
    const double cur = std::exp(logd(lo + h * static_cast<double>(j)) - peak);
    cdf[j] = cdf[j - 1] + 0.5 * h * (prev + cur);
    prev = cur;
  }
  SigmaSamples out;
  out.samples.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const double target = rng.uniform() * cdf[m];
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
    const std::size_t j = std::min<std::size_t>(m, static_cast<std::size_t>(std::max<long>(1, it - cdf.begin())));
    const double w = (target - cdf[j - 1]) / std::max(cdf[j] - cdf[j - 1], 1e-300);
    TriangularArray t(2);
    t(2, 1) = x1;
    t(2, 2) = x2;
    t(1, 1) = mid + lo + h * (static_cast<double>(j - 1) + w);
    out.samples.push_back(t);
  }
  return out;
}

double split_rhat(const std::vector<std::vector<double>>& chains) {
  // split each chain in half, then Gelman-Rubin
  std::vector<std::vector<double>> parts;
  for (const auto& c : chains) {
    const std::size_t h = c.size() / 2;
    parts.emplace_back(c.begin(), c.begin() + static_cast<long>(h));
    parts.emplace_back(c.begin() + static_cast<long>(h), c.begin() + static_cast<long>(2 * h));
  }
  const double n = static_cast<double>(parts[0].size());
  const double m = static_cast<double>(parts.size());
  if (n < 2) return 1.0;
  std::vector<double> means;
  double w = 0.0;
  for (const auto& p : parts) {
    double s = 0.0;
    for (double v : p) s += v;
    const double mean = s / n;
    double ss = 0.0;
    for (double v : p) ss += (v - mean) * (v - mean);
    means.push_back(mean);
    w += ss / (n - 1);
  }
  w /= m;
  double grand = 0.0;
  for (double v : means) grand += v;
  grand /= m;
  double b = 0.0;
  for (double v : means) b += (v - grand) * (v - grand);
  b *= n / (m - 1);
  if (w <= 0.0) return 1.0;
  const double var = (n - 1) / n * w + b / n;
  return std::sqrt(var / w);
}

SigmaSamples sample_sigma_n3(const GibbsPatternLaw& law, RngStream& rng, std::size_t count) {
  constexpr std::size_t chains = 4, thin = 5, burn = 4000, batch = 200;
  const std::size_t d = 3;
  const CriticalPoint cp = maximize_phase(law.x, law.nu);
  Eigen::Map<const Eigen::Matrix3d> hess(cp.hessian.data());
  const Eigen::Matrix3d chol = hess.inverse().llt().matrixL();
  const SpectralParam lam = SpectralParam::real(law.nu);
  std::vector<double> flat = cp.pattern.flat();
  auto logd = [&](const Eigen::Vector3d& v) {
    for (std::size_t j = 0; j < d; ++j) flat[j] = v(static_cast<Eigen::Index>(j));
    return givental_phase(flat, 3, lam).real();
  };
  const Eigen::Vector3d center(flat[0], flat[1], flat[2]);
  const std::size_t per_chain = (count + chains - 1) / chains;

  SigmaSamples out;
  std::vector<std::vector<double>> trace(chains);
  std::size_t accepted = 0, proposed = 0;
  for (std::size_t c = 0; c < chains; ++c) {
    auto gauss = [&]() { return Eigen::Vector3d(rng.normal(), rng.normal(), rng.normal()); };
    Eigen::Vector3d cur = center + chol * gauss();
    double lcur = logd(cur);
    double step = 2.38 / std::sqrt(3.0);
    auto move = [&]() {
      const Eigen::Vector3d prop = cur + step * (chol * gauss());
      const double lp = logd(prop);
      if (std::isfinite(lp) && std::log(rng.uniform()) < lp - lcur) {
        cur = prop;
        lcur = lp;
        return true;
      }
      return false;
    };
    for (std::size_t b = 0; b < burn / batch; ++b) {
      std::size_t acc = 0;
      for (std::size_t s = 0; s < batch; ++s) acc += move();
      const double rate = static_cast<double>(acc) / batch;
      if (rate < 0.25) step *= 0.8;
      else if (rate > 0.35) step *= 1.2;
    }
    for (std::size_t s = 0; s < per_chain; ++s) {
      for (std::size_t k = 0; k < thin; ++k) {
        accepted += move();
        ++proposed;
      }
      TriangularArray t = cp.pattern;
      for (std::size_t j = 0; j < d; ++j) t.flat()[j] = cur(static_cast<Eigen::Index>(j));
      trace[c].push_back(lcur);
      if (out.samples.size() < count) out.samples.push_back(t);
    }
  }
  out.acceptance = proposed ? static_cast<double>(accepted) / static_cast<double>(proposed) : 1.0;
  out.rhat = split_rhat(trace);
  return out;
}

}  // namespace

SigmaSamples sample_sigma(const GibbsPatternLaw& law, RngStream& rng, std::size_t count) {
  switch (law.n()) {
    case 1: {
      SigmaSamples out;
      TriangularArray t(1);
      t(1, 1) = law.x[0];
      out.samples.assign(count, t);
      return out;
    }
    case 2: return sample_sigma_n2(law, rng, count);
    case 3: return sample_sigma_n3(law, rng, count);
    default: throw UnsupportedSize("sample_sigma: N <= 3 only");
  }
}

LaplaceProfile laplace_profile(const std::vector<double>& nu, const std::vector<double>& ms) {
  const std::size_t n = nu.size();
  if (n < 2 || n > 3) throw UnsupportedSize("laplace_profile: N = 2 or 3");
  const std::vector<double> r = rho(n);
  const std::vector<double> zero(n, 0.0);
  const double dfree = static_cast<double>(n * (n - 1) / 2);
  // shifting row k by M rho^k scales every exponential by e^{M/2}; T^0 is the critical point over Gamma(0)
  const double f0_unit = critical_point(zero).value;
  LaplaceProfile p;
  for (double m : ms) {
    if (!(m > 0.0)) throw ArgumentError("laplace_profile: M must be positive");
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = -m * r[i];
    const double lnu = log_whittaker_psi(x, nu);
    const double l0 = log_whittaker_psi(x, zero);
    p.m.push_back(m);
    p.log_psi_nu.push_back(lnu);
    p.log_psi_0.push_back(l0);
    p.difference.push_back(lnu - l0);
    p.remainder.push_back(l0 - (-dfree * m / 4.0 + std::exp(m / 2.0) * f0_unit));
  }
  return p;
}

}  // namespace gtoda
