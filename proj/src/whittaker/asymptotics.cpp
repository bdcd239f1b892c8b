#include <cmath>

#include "gtoda/errors.hpp"
#include "gtoda/identities.hpp"

namespace gtoda {

AsymptoticReport asymptotic_checks(const std::vector<double>& x, const std::vector<double>& lambda,
                                   const std::vector<double>& betas) {
  if (x.size() != 2 || lambda.size() != 2) throw UnsupportedSize("asymptotic_checks: N = 2 only");
  if (!(x[0] > x[1])) throw DomainError("asymptotic_checks: x must lie in the open chamber");
  AsymptoticReport rep;
  rep.target0 = vandermonde(x) / superfactorial(2);
  rep.target1 = alternating_exp_ratio(x, lambda);
  for (double b : betas) {
    if (!(b > 0.0)) throw ArgumentError("asymptotic_checks: beta must be positive");
    const std::vector<double> bx{b * x[0], b * x[1]};
    const double p0 = std::exp(log_whittaker_psi(bx, {0.0, 0.0}));
    const double p1 = std::exp(log_whittaker_psi(bx, {lambda[0] / b, lambda[1] / b}));
    rep.betas.push_back(b);
    rep.ratio0.push_back(p0 / b / rep.target0);
    rep.ratio1.push_back(p1 / b / rep.target1);
  }
  return rep;
}

}  // namespace gtoda
