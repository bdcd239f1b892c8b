#pragma once

#include <optional>
#include <vector>

#include "gtoda/grsk.hpp"
#include "gtoda/paths.hpp"
#include "gtoda/rng.hpp"

namespace gtoda {

struct SdeConfig {
  double horizon = 1.0;
  double dt = 1e-3;
  double guard = 50.0;  ///< abort when an exponent exceeds this

  TimeGrid grid() const;
};

/// Per-entry drift increments of the triangular Z system: row k entry i moves by
/// dZ_{k-1,i} + b_{k,i} dt (i < k) or dW_k + b_{k,k} dt, with b_{k,k} carrying nu_k.
TriangularArray drift_coefficients(const TriangularArray& z, const std::vector<double>& nu);

/// Euler scheme for Z started at `init`, driven by dW_k (BM with drift nu).
PatternTrajectory simulate_triangular_z(const std::vector<double>& nu, const TriangularArray& init,
                                        const SdeConfig& cfg, RngStream& rng);
/// Same scheme driven by a given path W (its increments already carry the drift).
PatternTrajectory simulate_triangular_z(const VectorPath& w, const TriangularArray& init, double guard = 50.0);

/// Patterns drawn from sigma^{x0}_nu with x0 = -M rho^N.
std::vector<TriangularArray> entrance_starts(double m, const std::vector<double>& nu, RngStream& rng,
                                             std::size_t count);
TriangularArray entrance_start(double m, const std::vector<double>& nu, RngStream& rng);

/// Symmetric system with independent noises W_{k,i}.
PatternTrajectory simulate_symmetric_s(const std::vector<double>& nu, const TriangularArray& init,
                                       const SdeConfig& cfg, RngStream& rng);

/// -d/dz log K_mu(z), tabulated in log z.
class MacdonaldLogSlope {
 public:
  explicit MacdonaldLogSlope(double mu);
  double operator()(double z) const;
  /// Direct evaluation by central differences of log K (relative step 1e-5).
  double direct(double z) const;
  double mu() const { return mu_; }

 private:
  double mu_;
  double w0_, hw_;
  std::vector<double> table_;  // z * (-d/dz log K_mu(z)) at w = log z
};

/// N = 2 Whittaker diffusion. The sum is BM with drift nu1 + nu2 and variance 2; the difference
/// D = x1 - x2 is simulated through U = e^{D/2}. Without x0 the process enters from -infinity
/// (U(0) = 0) and x is undefined at t = 0.
VectorPath simulate_whittaker_diffusion_n2(const std::vector<double>& nu, const std::optional<std::vector<double>>& x0,
                                           const SdeConfig& cfg, RngStream& rng);
/// Terminal values only, one per replica (stream r of `seed`), in parallel.
std::vector<std::vector<double>> whittaker_n2_endpoints(const std::vector<double>& nu,
                                                        const std::optional<std::vector<double>>& x0,
                                                        const SdeConfig& cfg, std::uint64_t seed, std::size_t reps);
/// Drift of the difference coordinate: 2 d/dD log K_mu(2 e^{-D/2}).
double whittaker_difference_drift(double mu, double d);

struct XyPath {
  VectorPath x;
  std::vector<double> y;
};
/// (X, Y) system, N = 2: Y is BM with drift nu1 started from the Lambda^{x0} law.
XyPath simulate_xy_pair_n2(const std::vector<double>& nu, const std::vector<double>& x0, const SdeConfig& cfg,
                           RngStream& rng);

/// X = B1 + log int e^{B2 - B1}, Y = B3 - log int e^{B3 - B2} on the grid (undefined at t = 0).
VectorPath symmetric_pair_n2(const TimeGrid& grid, RngStream& rng);

/// log int_0^t exp(2B_s - B_t) ds with B a Brownian motion of drift mu; trapezoid rule, step dt.
double log_exponential_functional(double mu, double t, double dt, RngStream& rng);

}  // namespace gtoda
