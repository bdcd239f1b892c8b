#pragma once

#include <vector>

#include "gtoda/whittaker.hpp"

namespace gtoda {

struct BumpStadeReport {
  cplx lhs;
  cplx rhs;
  double residual = 0.0;  ///< |lhs - rhs| / |rhs|
};

/// int e^{-e^{x_1 - z}} psi_lambda(x) psi_nu(x) dx against e^{z sum(lambda+nu)} prod Gamma(lambda_i + nu_j),
/// N = 1 or 2, by nested quadrature.
BumpStadeReport bump_stade_check(const SpectralParam& lambda, const SpectralParam& nu, double z);

/// Relative residual of (H_x - theta^2) Q_theta(x, y) = H_y Q_theta(x, y) by central differences.
double verify_kernel_intertwining(const std::vector<double>& x, const std::vector<double>& y, cplx theta,
                                  double h = 1e-4);

/// Gaussian bump f(x, y) = exp(-(|x - cx|^2 + (y - cy)^2) / (2 w^2)).
struct BumpSpec {
  std::vector<double> cx{0.3, -0.2};
  double cy = 0.1;
  double width = 0.8;
};

struct OperatorReport {
  double residual_u = 0.0;          ///< (H - theta^2) R f vs R U f
  double residual_v = 0.0;          ///< (H - theta^2) R f vs R V f
  double residual_u_printed = 0.0;  ///< U without the theta term on d/dx_1
  double uv_gap = 0.0;              ///< |R U f - R V f| relative
};

/// N = 2 operator intertwinings, evaluated at a few x points around the bump.
OperatorReport verify_operator_intertwinings(double theta, const BumpSpec& bump = {});

struct AsymptoticReport {
  std::vector<double> betas;
  std::vector<double> ratio0;  ///< beta^{-d} psi_0(beta x) / (h(x)/prod k!)
  std::vector<double> ratio1;  ///< beta^{-d} psi_{lambda/beta}(beta x) / alternating ratio
  double target0 = 0.0;
  double target1 = 0.0;
};

/// Zero-temperature limits of psi along a ladder of beta, N = 2.
AsymptoticReport asymptotic_checks(const std::vector<double>& x, const std::vector<double>& lambda,
                                   const std::vector<double>& betas);

}  // namespace gtoda
