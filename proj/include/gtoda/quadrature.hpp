#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace gtoda::quad {

/// Result of an adaptive integration.
template <class T>
struct Integral {
  T value{};
  double abs_error = 0.0;
  std::size_t evaluations = 0;
};

namespace detail {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
inline double magnitude(const T& v) {
  return std::abs(v);
}

template <class T, class F>
Integral<T> gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const T fc = f(c);
  T kron = fc * kWgk[7];
  T gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const T f1 = f(c - dx);
    const T f2 = f(c + dx);
    kron += (f1 + f2) * kWgk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kWg[j / 2];
  }
  Integral<T> r;
  r.value = kron * h;
  r.abs_error = magnitude(T((kron - gauss) * h));
  r.evaluations = 15;
  return r;
}

template <class T, class F>
void adapt(F& f, double a, double b, double abs_tol, double rel_tol, int depth, Integral<T>& acc,
           const Integral<T>& whole) {
  const double m = 0.5 * (a + b);
  const Integral<T> left = gk15<T>(f, a, m);
  const Integral<T> right = gk15<T>(f, m, b);
  acc.evaluations += 30;
  const T v = left.value + right.value;
  const double err = left.abs_error + right.abs_error;
  const double tol = std::max(abs_tol, rel_tol * magnitude(v));
  if (err <= tol || depth <= 0 || std::abs(b - a) < 1e-14 * (1.0 + std::abs(a))) {
    acc.value += v;
    acc.abs_error += err;
    return;
  }
  (void)whole;
  adapt<T>(f, a, m, 0.5 * abs_tol, rel_tol, depth - 1, acc, left);
  adapt<T>(f, m, b, 0.5 * abs_tol, rel_tol, depth - 1, acc, right);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (7/15) on [a, b] by recursive bisection.
/// T is double or std::complex<double>.
template <class T, class F>
Integral<T> integrate(F&& f, double a, double b, double abs_tol = 1e-14, double rel_tol = 1e-12,
                      int max_depth = 40) {
  Integral<T> acc;
  auto& fr = f;
  const Integral<T> whole = detail::gk15<T>(fr, a, b);
  acc.evaluations = 15;
  const double tol = std::max(abs_tol, rel_tol * detail::magnitude(whole.value));
  if (whole.abs_error <= tol * 1e-3) return whole;
  detail::adapt<T>(fr, a, b, abs_tol, rel_tol, max_depth, acc, whole);
  return acc;
}

/// Adaptive integration over consecutive breakpoints.
template <class T, class F>
Integral<T> integrate_pieces(F&& f, const std::vector<double>& breaks, double abs_tol = 1e-14,
                             double rel_tol = 1e-12) {
  Integral<T> total;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const auto part = integrate<T>(f, breaks[i], breaks[i + 1], abs_tol, rel_tol);
    total.value += part.value;
    total.abs_error += part.abs_error;
    total.evaluations += part.evaluations;
  }
  return total;
}

/// Composite trapezoid on the uniform lattice {x0 + k h}, walking outward from x0 in both
/// directions until |term| drops below `cutoff` times the largest term seen for
/// `patience` consecutive nodes. Exponentially convergent for analytic integrands that
/// decay in a strip.
template <class T, class F>
T trapezoid_line(F&& f, double x0, double h, double cutoff = 1e-18, int patience = 4,
                 std::size_t max_nodes = 200000) {
  T sum = f(x0);
  double peak = detail::magnitude(sum);
  for (int dir : {-1, 1}) {
    int quiet = 0;
    for (std::size_t k = 1; k < max_nodes; ++k) {
      const T v = f(x0 + dir * static_cast<double>(k) * h);
      sum += v;
      const double mag = detail::magnitude(v);
      peak = std::max(peak, mag);
      if (mag <= cutoff * peak) {
        if (++quiet >= patience) break;
      } else {
        quiet = 0;
      }
    }
  }
  return sum * h;
}

}  // namespace gtoda::quad
