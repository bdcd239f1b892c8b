#include "gtoda/sde.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "gtoda/errors.hpp"
#include "gtoda/gibbs.hpp"
#include "gtoda/parallel.hpp"
#include "gtoda/special.hpp"

namespace gtoda {

TimeGrid SdeConfig::grid() const {
  if (!(horizon > 0.0) || !(dt > 0.0)) throw ArgumentError("SdeConfig: horizon and dt must be positive");
  const auto steps = static_cast<std::size_t>(std::llround(horizon / dt));
  if (steps == 0) throw ArgumentError("SdeConfig: dt larger than horizon");
  return TimeGrid(horizon, steps);
}

namespace {

void check_exponent(double e, double guard, double t) {
  if (!(e <= guard)) throw AbortedPath("explosion guard tripped", t);
}

// Drift increments of the Z system at state z; `top` collects the largest exponent seen.
void z_drifts(const TriangularArray& z, const std::vector<double>& nu, TriangularArray& b, double& top) {
  const std::size_t n = z.n();
  b(1, 1) = nu[0];
  for (std::size_t k = 2; k <= n; ++k) {
    for (std::size_t i = 1; i < k; ++i) {
      const double up = z(k, i + 1) - z(k - 1, i);
      top = std::max(top, up);
      double v = std::exp(up);
      if (i > 1) {
        const double down = z(k, i) - z(k - 1, i - 1);
        top = std::max(top, down);
        v -= std::exp(down);
      }
      b(k, i) = v;
    }
    const double last = z(k, k) - z(k - 1, k - 1);
    top = std::max(top, last);
    b(k, k) = nu[k - 1] - std::exp(last);
  }
}

std::vector<VectorPath> empty_levels(const TimeGrid& grid, std::size_t n) {
  std::vector<VectorPath> levels;
  for (std::size_t k = 1; k <= n; ++k) levels.emplace_back(grid, k);
  return levels;
}

void store(std::vector<VectorPath>& levels, const TriangularArray& z, std::size_t m) {
  for (std::size_t k = 1; k <= z.n(); ++k)
    for (std::size_t i = 1; i <= k; ++i) levels[k - 1](m, i - 1) = z(k, i);
}

}  // namespace

TriangularArray drift_coefficients(const TriangularArray& z, const std::vector<double>& nu) {
  if (nu.size() != z.n() || z.n() == 0) throw ArgumentError("drift_coefficients: size mismatch");
  TriangularArray b(z.n());
  double top = kNegInf;
  z_drifts(z, nu, b, top);
  return b;
}

PatternTrajectory simulate_triangular_z(const VectorPath& w, const TriangularArray& init, double guard) {
  const std::size_t n = init.n();
  if (w.dims() != n) throw ArgumentError("simulate_triangular_z: noise dimension must equal N");
  for (double v : init.flat())
    if (!std::isfinite(v)) throw ArgumentError("simulate_triangular_z: non-finite initial pattern");
  const TimeGrid& grid = w.grid();
  const double dt = grid.dt();
  const std::vector<double> zero(n, 0.0);
  auto levels = empty_levels(grid, n);
  TriangularArray z = init, b(n), dz(n);
  store(levels, z, 0);
  for (std::size_t m = 0; m < grid.steps; ++m) {
    double top = kNegInf;
    z_drifts(z, zero, b, top);
    check_exponent(top, guard, grid.t(m));
    dz(1, 1) = w(m + 1, 0) - w(m, 0);
    for (std::size_t k = 2; k <= n; ++k) {
      for (std::size_t i = 1; i < k; ++i) dz(k, i) = dz(k - 1, i) + b(k, i) * dt;
      dz(k, k) = w(m + 1, k - 1) - w(m, k - 1) + b(k, k) * dt;
    }
    for (std::size_t j = 0; j < z.flat().size(); ++j) z.flat()[j] += dz.flat()[j];
    store(levels, z, m + 1);
  }
  return PatternTrajectory(std::move(levels));
}

PatternTrajectory simulate_triangular_z(const std::vector<double>& nu, const TriangularArray& init,
                                        const SdeConfig& cfg, RngStream& rng) {
  if (nu.size() != init.n()) throw ArgumentError("simulate_triangular_z: size mismatch");
  const VectorPath w = sample_brownian_path(nu.size(), DriftVector(nu), cfg.grid(), rng);
  return simulate_triangular_z(w, init, cfg.guard);
}

std::vector<TriangularArray> entrance_starts(double m, const std::vector<double>& nu, RngStream& rng,
                                             std::size_t count) {
  if (!(m > 0.0)) throw ArgumentError("entrance_start: M must be positive");
  const std::vector<double> r = rho(nu.size());
  std::vector<double> x0(nu.size());
  for (std::size_t i = 0; i < nu.size(); ++i) x0[i] = -m * r[i];
  return sample_sigma(GibbsPatternLaw(x0, nu), rng, count).samples;
}

TriangularArray entrance_start(double m, const std::vector<double>& nu, RngStream& rng) {
  return entrance_starts(m, nu, rng, 1).front();
}

PatternTrajectory simulate_symmetric_s(const std::vector<double>& nu, const TriangularArray& init,
                                       const SdeConfig& cfg, RngStream& rng) {
  const std::size_t n = init.n();
  if (nu.size() != n || n == 0) throw ArgumentError("simulate_symmetric_s: size mismatch");
  const TimeGrid grid = cfg.grid();
  const double dt = grid.dt(), sq = std::sqrt(dt);
  auto levels = empty_levels(grid, n);
  TriangularArray s = init, ds(n);
  store(levels, s, 0);
  for (std::size_t m = 0; m < grid.steps; ++m) {
    double top = kNegInf;
    for (std::size_t k = 1; k <= n; ++k)
      for (std::size_t i = 1; i <= k; ++i) {
        double drift = 0.0;
        if (i < k) {
          const double e = s(k - 1, i) - s(k, i);
          top = std::max(top, e);
          drift += std::exp(e);
        } else {
          drift += nu[k - 1];
        }
        if (i > 1) {
          const double e = s(k, i) - s(k - 1, i - 1);
          top = std::max(top, e);
          drift -= std::exp(e);
        }
        ds(k, i) = drift * dt + sq * rng.normal();
      }
    check_exponent(top, cfg.guard, grid.t(m));
    for (std::size_t j = 0; j < s.flat().size(); ++j) s.flat()[j] += ds.flat()[j];
    store(levels, s, m + 1);
  }
  return PatternTrajectory(std::move(levels));
}

namespace {
constexpr double kEulerGamma = 0.57721566490153286;
constexpr double kTableLo = -35.0, kTableStep = 0.005;
const double kTableHi = std::log(1e4);
}  // namespace

MacdonaldLogSlope::MacdonaldLogSlope(double mu) : mu_(mu), w0_(kTableLo), hw_(kTableStep) {
  if (!std::isfinite(mu)) throw ArgumentError("MacdonaldLogSlope: non-finite order");
  const auto m = static_cast<std::size_t>(std::ceil((kTableHi - kTableLo) / kTableStep)) + 3;
  table_.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double z = std::exp(w0_ + hw_ * static_cast<double>(j));
    table_[j] = z * direct(z);
  }
}

double MacdonaldLogSlope::direct(double z) const {
  const double h = 1e-5 * z;
  return (log_macdonald_k(mu_, z - h) - log_macdonald_k(mu_, z + h)) / (2.0 * h);
}

double MacdonaldLogSlope::operator()(double z) const {
  if (!(z > 0.0)) throw DomainError("MacdonaldLogSlope: z must be positive");
  if (z > 1e4) {
    const double a = (4.0 * mu_ * mu_ - 1.0) / 8.0;
    return 1.0 + 0.5 / z + a / (z * z);
  }
  const double w = std::log(z);
  if (w < w0_) {
    // small-z limit of z K_mu'(z)/K_mu(z)
    const double zg = mu_ == 0.0 ? 1.0 / (-std::log(0.5 * z) - kEulerGamma) : std::abs(mu_);
    return zg / z;
  }
  // Catmull-Rom on the table of z * slope
  const double pos = (w - w0_) / hw_;
  auto j = static_cast<std::size_t>(pos);
  j = std::clamp<std::size_t>(j, 1, table_.size() - 3);
  const double u = pos - static_cast<double>(j);
  const double p0 = table_[j - 1], p1 = table_[j], p2 = table_[j + 1], p3 = table_[j + 2];
  const double v = p1 + 0.5 * u * (p2 - p0 + u * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + u * (3.0 * (p1 - p2) + p3 - p0)));
  return v / z;
}

namespace {

const MacdonaldLogSlope& cached_slope(double mu) {
  static std::mutex lock;
  static std::map<double, std::unique_ptr<MacdonaldLogSlope>> cache;
  const std::lock_guard<std::mutex> guard(lock);
  auto& slot = cache[std::abs(mu)];
  if (!slot) slot = std::make_unique<MacdonaldLogSlope>(std::abs(mu));
  return *slot;
}

// Steps (sum, U = e^{D/2}) of the N = 2 diffusion; calls visit(m, sum, u) at each grid point.
template <class Visit>
void run_whittaker_n2(const std::vector<double>& nu, const std::optional<std::vector<double>>& x0,
                      const TimeGrid& grid, RngStream& rng, Visit&& visit) {
  if (nu.size() != 2 || (x0 && x0->size() != 2)) throw ArgumentError("whittaker diffusion: N = 2 only");
  const MacdonaldLogSlope& slope = cached_slope(nu[0] - nu[1]);
  const double dt = grid.dt(), sq = std::sqrt(dt);
  double sum = x0 ? (*x0)[0] + (*x0)[1] : 0.0;
  double u = x0 ? std::exp(0.5 * ((*x0)[0] - (*x0)[1])) : 0.0;
  visit(0, sum, u);
  for (std::size_t m = 0; m < grid.steps; ++m) {
    const double g = u > 0.0 ? slope(2.0 / u) : 1.0;
    const double b1 = rng.normal(), b2 = rng.normal();
    sum += (nu[0] + nu[1]) * dt + std::sqrt(2.0) * sq * b1;
    u += (g + 0.25 * u) * dt + u / std::sqrt(2.0) * sq * b2;
    if (!(u > 0.0) || !std::isfinite(u)) throw AbortedPath("whittaker diffusion: U left (0, inf)", grid.t(m + 1));
    visit(m + 1, sum, u);
  }
}

}  // namespace

double whittaker_difference_drift(double mu, double d) {
  const double z = 2.0 * std::exp(-0.5 * d);
  return z * cached_slope(mu)(z);
}

VectorPath simulate_whittaker_diffusion_n2(const std::vector<double>& nu, const std::optional<std::vector<double>>& x0,
                                           const SdeConfig& cfg, RngStream& rng) {
  const TimeGrid grid = cfg.grid();
  VectorPath out(grid, 2);
  run_whittaker_n2(nu, x0, grid, rng, [&](std::size_t m, double sum, double u) {
    if (u == 0.0) return;
    const double d = 2.0 * std::log(u);
    out(m, 0) = 0.5 * (sum + d);
    out(m, 1) = 0.5 * (sum - d);
  });
  if (!x0) {
    out.set_defined_from(0, 1);
    out.set_defined_from(1, 1);
  }
  return out;
}

std::vector<std::vector<double>> whittaker_n2_endpoints(const std::vector<double>& nu,
                                                        const std::optional<std::vector<double>>& x0,
                                                        const SdeConfig& cfg, std::uint64_t seed, std::size_t reps) {
  const TimeGrid grid = cfg.grid();
  cached_slope(nu.at(0) - nu.at(1));
  return parallel_map(reps, [&](std::size_t r) {
    RngStream rng(seed, r);
    std::vector<double> end(2);
    run_whittaker_n2(nu, x0, grid, rng, [&](std::size_t m, double sum, double u) {
      if (m != grid.steps) return;
      const double d = 2.0 * std::log(u);
      end = {0.5 * (sum + d), 0.5 * (sum - d)};
    });
    return end;
  });
}

XyPath simulate_xy_pair_n2(const std::vector<double>& nu, const std::vector<double>& x0, const SdeConfig& cfg,
                           RngStream& rng) {
  if (nu.size() != 2 || x0.size() != 2) throw ArgumentError("simulate_xy_pair_n2: N = 2 only");
  const TimeGrid grid = cfg.grid();
  const double dt = grid.dt(), sq = std::sqrt(dt);
  // Lambda^{x0}: y has density proportional to Q_{nu2}(x0, y) e^{nu1 y}, the sigma^{x0}_nu law of T_11
  double y = sample_sigma(GibbsPatternLaw(x0, nu), rng, 1).samples.front()(1, 1);
  double x1 = x0[0], x2 = x0[1];
  XyPath out{VectorPath(grid, 2), std::vector<double>(grid.points())};
  out.x(0, 0) = x1;
  out.x(0, 1) = x2;
  out.y[0] = y;
  for (std::size_t m = 0; m < grid.steps; ++m) {
    const double e = x2 - y;
    check_exponent(e, cfg.guard, grid.t(m));
    const double ex = std::exp(e);
    const double dy = nu[0] * dt + sq * rng.normal();
    const double dw = sq * rng.normal();
    x1 += dy + ex * dt;
    x2 += dw + (nu[1] - ex) * dt;
    y += dy;
    out.x(m + 1, 0) = x1;
    out.x(m + 1, 1) = x2;
    out.y[m + 1] = y;
  }
  return out;
}

VectorPath symmetric_pair_n2(const TimeGrid& grid, RngStream& rng) {
  const VectorPath b = sample_brownian_path(3, DriftVector::zero(3), grid, rng);
  std::vector<double> f(grid.points()), g(grid.points());
  for (std::size_t m = 0; m < grid.points(); ++m) {
    f[m] = b(m, 1) - b(m, 0);
    g[m] = b(m, 2) - b(m, 1);
  }
  const auto lf = log_cumulative_integral_exp(f, grid.dt());
  const auto lg = log_cumulative_integral_exp(g, grid.dt());
  VectorPath out(grid, 2);
  for (std::size_t m = 1; m < grid.points(); ++m) {
    out(m, 0) = b(m, 0) + lf[m];
    out(m, 1) = b(m, 2) - lg[m];
  }
  out.set_defined_from(0, 1);
  out.set_defined_from(1, 1);
  return out;
}

double log_exponential_functional(double mu, double t, double dt, RngStream& rng) {
  if (!(t > 0.0) || !(dt > 0.0)) throw ArgumentError("log_exponential_functional: t and dt must be positive");
  const auto steps = static_cast<std::size_t>(std::llround(t / dt));
  const double h = t / static_cast<double>(steps), sq = std::sqrt(h);
  std::vector<double> f(steps + 1);
  double b = 0.0;
  f[0] = 0.0;
  for (std::size_t m = 1; m <= steps; ++m) {
    b += mu * h + sq * rng.normal();
    f[m] = 2.0 * b;
  }
  return log_integral_exp(f, h, steps) - b;
}

}  // namespace gtoda
