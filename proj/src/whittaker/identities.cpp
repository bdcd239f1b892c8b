#include "gtoda/identities.hpp"

#include <algorithm>
#include <cmath>

#include "gtoda/errors.hpp"
#include "gtoda/quadrature.hpp"

namespace gtoda {

namespace {

cplx log_kernel(const std::vector<double>& x, const std::vector<double>& y, cplx theta) {
  double sx = 0.0, sy = 0.0, pot = 0.0;
  for (double v : x) sx += v;
  for (std::size_t i = 0; i < y.size(); ++i) {
    sy += y[i];
    pot += std::exp(y[i] - x[i]) + std::exp(x[i + 1] - y[i]);
  }
  return theta * (sx - sy) - pot;
}

double toda_potential(const std::vector<double>& x) {
  double p = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) p += 2.0 * std::exp(x[i + 1] - x[i]);
  return p;
}

}  // namespace

BumpStadeReport bump_stade_check(const SpectralParam& lambda, const SpectralParam& nu, double z) {
  const std::size_t n = lambda.size();
  if (n != nu.size() || n < 1) throw ArgumentError("bump_stade_check: size mismatch");
  if (n > 2) throw UnsupportedSize("bump_stade_check: N <= 2 only");
  cplx sigma = 0.0;
  for (std::size_t i = 0; i < n; ++i) sigma += lambda[i] + nu[i];
  BumpStadeReport rep;
  rep.rhs = std::exp(z * sigma);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rep.rhs *= gamma_complex(lambda[i] + nu[j]);

  // p-integral of e^{c p - e^{p - z}}; decays like e^{Re c p} to the left
  auto p_integral = [&](cplx c) {
    if (!(c.real() > 0.0)) throw DomainError("bump_stade_check: integral diverges");
    const double lo = z - 40.0 / c.real() - 5.0, hi = z + 4.5;
    std::vector<double> br;
    for (double b = lo; b < hi; b += 2.0) br.push_back(b);
    br.push_back(hi);
    auto f = [&](double p) { return std::exp(c * p - std::exp(p - z)); };
    return quad::integrate_pieces<cplx>(f, br, 1e-300, 1e-12).value;
  };

  if (n == 1) {
    rep.lhs = p_integral(sigma);
  } else {
    // x1 = p, x2 = p + q; psi_l psi_n = 4 e^{sigma (p + q/2)} K_{dl}(r) K_{dn}(r), r = 2e^{q/2}
    const cplx dl = lambda[0] - lambda[1], dn = nu[0] - nu[1];
    const double rate = 0.5 * (sigma.real() - std::abs(dl.real()) - std::abs(dn.real()));
    if (!(rate > 0.0)) throw DomainError("bump_stade_check: integral diverges as x2 - x1 -> -inf");
    const double qlo = -std::min(400.0, 28.0 / rate + 10.0), qhi = 9.0;
    auto g = [&](double q) {
      const double r = 2.0 * std::exp(0.5 * q);
      const cplx kk = macdonald_k(dl, r) * macdonald_k(dn, r);
      if (kk == 0.0) return cplx(0.0);
      return 4.0 * std::exp(0.5 * sigma * q) * kk * p_integral(sigma);
    };
    std::vector<double> br;
    for (double b = qlo; b < qhi; b += 2.0) br.push_back(b);
    br.push_back(qhi);
    rep.lhs = quad::integrate_pieces<cplx>(g, br, 1e-300, 1e-11).value;
  }
  rep.residual = std::abs(rep.lhs - rep.rhs) / std::abs(rep.rhs);
  return rep;
}

double verify_kernel_intertwining(const std::vector<double>& x, const std::vector<double>& y, cplx theta, double h) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() + 1 != n) throw ArgumentError("verify_kernel_intertwining: need |y| = |x| - 1 >= 1");
  const cplx q0 = std::exp(log_kernel(x, y, theta));
  auto lap = [&](bool on_x) {
    cplx s = 0.0;
    const std::size_t m = on_x ? n : n - 1;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<double> xp = x, xm = x, yp = y, ym = y;
      if (on_x) {
        xp[i] += h;
        xm[i] -= h;
      } else {
        yp[i] += h;
        ym[i] -= h;
      }
      s += (std::exp(log_kernel(xp, yp, theta)) - 2.0 * q0 + std::exp(log_kernel(xm, ym, theta))) / (h * h);
    }
    return s;
  };
  const cplx lx = lap(true), ly = lap(false);
  const cplx px = toda_potential(x) * q0, py = toda_potential(y) * q0;
  const cplx t2 = theta * theta * q0;
  const cplx lhs = lx - px - t2;
  const cplx rhs = ly - py;
  const double scale = std::abs(lx) + std::abs(px) + std::abs(t2) + std::abs(ly) + std::abs(py);
  return std::abs(lhs - rhs) / scale;
}

OperatorReport verify_operator_intertwinings(double theta, const BumpSpec& bump) {
  if (bump.cx.size() != 2 || !(bump.width > 0.0)) throw ArgumentError("verify_operator_intertwinings: N = 2 bump");
  const double w2 = bump.width * bump.width;
  struct Parts {
    double f, f1, f2, fy, f11, f22, fyy, fy1;
  };
  auto bumpf = [&](double x1, double x2, double y) {
    const double a = x1 - bump.cx[0], b = x2 - bump.cx[1], c = y - bump.cy;
    const double f = std::exp(-(a * a + b * b + c * c) / (2.0 * w2));
    return Parts{f, -a / w2 * f, -b / w2 * f, -c / w2 * f, (a * a / w2 - 1.0) / w2 * f,
                 (b * b / w2 - 1.0) / w2 * f, (c * c / w2 - 1.0) / w2 * f, a * c / (w2 * w2) * f};
  };
  const double dy = 0.01;
  // y-integral against Q over the window where Q is not negligible
  auto integrate_y = [&](double x1, double x2, auto&& integrand) {
    const double lo = std::min(x1, x2) - 8.0, hi = std::max(x1, x2) + 8.0;
    double s = 0.0;
    for (double y = lo; y <= hi; y += dy) {
      const double q = std::exp(theta * (x1 + x2 - y) - std::exp(y - x1) - std::exp(x2 - y));
      s += q * integrand(x1, x2, y);
    }
    return s * dy;
  };
  auto rf = [&](double x1, double x2) {
    return integrate_y(x1, x2, [&](double a, double b, double y) { return bumpf(a, b, y).f; });
  };
  auto u_op = [&](bool printed) {
    return [&, printed](double x1, double x2, double y) {
      const Parts p = bumpf(x1, x2, y);
      const double c1 = 2.0 * ((printed ? 0.0 : theta) + std::exp(y - x1));
      return p.fyy + p.f11 + p.f22 + c1 * p.f1 + 2.0 * (theta - std::exp(x2 - y)) * p.f2;
    };
  };
  auto v_op = [&](double x1, double x2, double y) {
    const Parts p = bumpf(x1, x2, y);
    return p.fyy + p.f11 + p.f22 + 2.0 * (p.fy1 + std::exp(x2 - y) * p.f1) + 2.0 * (theta - std::exp(x2 - y)) * p.f2;
  };
  auto abs_scale = [&](double x1, double x2, double y) {
    const Parts p = bumpf(x1, x2, y);
    return std::abs(p.fyy) + std::abs(p.f11) + std::abs(p.f22) + 2.0 * std::abs(p.fy1) +
           2.0 * (std::abs(theta) + std::exp(y - x1) + std::exp(x2 - y)) * (std::abs(p.f1) + std::abs(p.f2));
  };

  OperatorReport rep;
  const double h = 1e-3;
  const std::vector<std::pair<double, double>> offsets{{0.0, 0.0}, {0.5, -0.3}, {-0.4, 0.6}, {1.0, 0.2}};
  for (const auto& [o1, o2] : offsets) {
    const double x1 = bump.cx[0] + o1, x2 = bump.cx[1] + o2;
    const double c = rf(x1, x2);
    const double lap = (rf(x1 + h, x2) + rf(x1 - h, x2) + rf(x1, x2 + h) + rf(x1, x2 - h) - 4.0 * c) / (h * h);
    const double lhs = lap - 2.0 * std::exp(x2 - x1) * c - theta * theta * c;
    const double ru = integrate_y(x1, x2, u_op(false));
    const double rp = integrate_y(x1, x2, u_op(true));
    const double rv = integrate_y(x1, x2, v_op);
    const double scale = integrate_y(x1, x2, abs_scale) + std::abs(lhs);
    rep.residual_u = std::max(rep.residual_u, std::abs(lhs - ru) / scale);
    rep.residual_v = std::max(rep.residual_v, std::abs(lhs - rv) / scale);
    rep.residual_u_printed = std::max(rep.residual_u_printed, std::abs(lhs - rp) / scale);
    rep.uv_gap = std::max(rep.uv_gap, std::abs(ru - rv) / scale);
  }
  return rep;
}

}  // namespace gtoda
