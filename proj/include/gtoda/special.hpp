#pragma once

#include <complex>

namespace gtoda {

using cplx = std::complex<double>;

/// Analytic continuation of log Gamma from the positive real axis (not reduced mod 2*pi*i).
/// Throws PoleError at non-positive integers.
cplx log_gamma_complex(cplx z);
inline cplx gamma_complex(cplx z) { return std::exp(log_gamma_complex(z)); }

/// Psi(x) = Gamma'(x)/Gamma(x) for x > 0, absolute error below 1e-13.
double digamma(double x);
/// Psi'(x) for x > 0.
double trigamma(double x);

/// Macdonald function K_nu(z), z > 0, any complex order.
///
/// Evaluates (1/2) * integral over R of exp(nu*u - z*cosh u) du along the horizontal line
/// Im u = y0, where y0 is taken from the saddle point asinh(nu/z) (clipped inside
/// (-pi/2, pi/2)). Shifting the line keeps imaginary orders from cancelling
/// catastrophically.
cplx macdonald_k(cplx order, double z);
double macdonald_k(double order, double z);

/// log K_nu(z) for real order; stays finite where K itself under/overflows.
double log_macdonald_k(double order, double z);

/// Modified Bessel function of the first kind I_nu(r), nu >= 0, r >= 0, by power series.
double modified_bessel_i(double order, double r);

}  // namespace gtoda
