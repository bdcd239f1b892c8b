#pragma once

#include <cstdint>
#include <vector>

#include "gtoda/grsk.hpp"
#include "gtoda/rng.hpp"

namespace gtoda {

/// The law sigma^x_nu: density e^{F_nu(T)} / psi_nu(x) on arrays with bottom row x.
struct GibbsPatternLaw {
  std::vector<double> x;
  std::vector<double> nu;

  GibbsPatternLaw(std::vector<double> x, std::vector<double> nu);
  std::size_t n() const noexcept { return x.size(); }
  double log_weight(const TriangularArray& t) const;  ///< F_nu(T)
  double f0(const TriangularArray& t) const;          ///< F_0(T)
  double s_nu(const TriangularArray& t) const;        ///< F_nu(T) - F_0(T)
};

struct CriticalPoint {
  TriangularArray pattern;
  double grad_norm = 0.0;           ///< max-norm of the gradient at return
  double row_mean_residual = 0.0;   ///< max_k |mean(row k) - mean(x)|
  int iterations = 0;
  std::vector<double> hessian;      ///< of -F, over the free entries (rows 1..N-1), row-major
  double value = 0.0;               ///< F_nu at the maximizer
};

/// Maximizer of F_nu over Gamma(x) by damped Newton (-F_nu is strictly convex).
CriticalPoint maximize_phase(const std::vector<double>& x, const std::vector<double>& nu);
/// The critical point T^x of F_0.
CriticalPoint critical_point(const std::vector<double>& x);

/// rho^k = ((k-1)/2, (k-1)/2 - 1, ..., -(k-1)/2).
std::vector<double> rho(std::size_t k);

struct SigmaSamples {
  std::vector<TriangularArray> samples;
  double acceptance = 1.0;  ///< Metropolis acceptance rate (1 for exact sampling)
  double rhat = 1.0;        ///< potential scale reduction over chains (1 for exact sampling)
};

/// Draw `count` patterns from sigma^x_nu. N = 1, 2: exact inverse-CDF sampling on a fine grid.
/// N = 3: random-walk Metropolis (4 chains, tuned step, thinning).
SigmaSamples sample_sigma(const GibbsPatternLaw& law, RngStream& rng, std::size_t count);

/// Volume of the Gelfand-Tsetlin polytope GT(x): h(x) / prod k!, 0 with ties.
double gt_volume(const std::vector<double>& x);
struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};
/// Hit-or-miss estimate over the bounding box of interlacing patterns.
McEstimate gt_volume_mc(const std::vector<double>& x, std::size_t samples, std::uint64_t seed);

struct LaplaceProfile {
  std::vector<double> m;
  std::vector<double> log_psi_nu;
  std::vector<double> log_psi_0;
  std::vector<double> difference;  ///< log psi_nu - log psi_0
  std::vector<double> remainder;   ///< log psi_0 - (-M/4 + e^{M/2} F_0(T^0))
};
/// psi_nu(-M rho^N) along a ladder of M, N = 2 or 3.
LaplaceProfile laplace_profile(const std::vector<double>& nu, const std::vector<double>& ms);

}  // namespace gtoda
