#include <algorithm>
#include <cmath>

#include "gtoda/errors.hpp"
#include "gtoda/grsk.hpp"

namespace gtoda {

namespace {

// sup |a - b| over coordinates and grid points with t >= t_min where both are defined
double sup_diff(const VectorPath& a, const VectorPath& b, double t_min) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dims(); ++i) {
    const std::size_t from = std::max(a.defined_from(i), b.defined_from(i));
    for (std::size_t m = from; m < a.points(); ++m) {
      if (a.grid().t(m) < t_min) continue;
      worst = std::max(worst, std::abs(a(m, i) - b(m, i)));
    }
  }
  return worst;
}

std::vector<std::size_t> canonical_word(std::size_t n) {
  std::vector<std::size_t> w;
  for (std::size_t j = 2; j <= n; ++j)
    for (std::size_t i = j - 1; i >= 1; --i) w.push_back(i);
  return w;
}

}  // namespace

double sum_conservation_residual(const VectorPath& path) {
  double worst = 0.0;
  for (std::size_t i = 1; i < path.dims(); ++i) {
    const VectorPath out = transform_ti(path, i);
    for (std::size_t m = out.first_defined_index(); m < out.points(); ++m) {
      double s_in = 0.0, s_out = 0.0;
      for (std::size_t c = 0; c < path.dims(); ++c) {
        s_in += path(m, c);
        s_out += out(m, c);
      }
      worst = std::max(worst, std::abs(s_in - s_out));
    }
  }
  return worst;
}

BraidReport verify_braid(const VectorPath& fine, std::size_t i, const std::vector<std::size_t>& factors,
                         double t_min) {
  if (fine.dims() < 3) throw ArgumentError("verify_braid: needs N >= 3");
  if (i < 1 || i + 2 > fine.dims()) throw ArgumentError("verify_braid: index out of range");
  if (factors.empty()) throw ArgumentError("verify_braid: no refinement levels");
  BraidReport r;
  r.t_min = t_min;
  for (std::size_t f : factors) {
    const VectorPath p = fine.subsample(f);
    const VectorPath lhs = apply_word(p, {i, i + 1, i});
    const VectorPath rhs = apply_word(p, {i + 1, i, i + 1});
    r.dts.push_back(p.grid().dt());
    r.residuals.push_back(sup_diff(lhs, rhs, t_min));
  }
  if (r.dts.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(r.dts.size());
    for (std::size_t k = 0; k < r.dts.size(); ++k) {
      const double x = std::log(r.dts[k]);
      const double y = std::log(std::max(r.residuals[k], 1e-300));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    r.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return r;
}

SymmetryReport verify_symmetry(const VectorPath& path, double t_min) {
  const std::size_t n = path.dims();
  const auto word = canonical_word(n);
  std::vector<std::size_t> mirrored;
  for (std::size_t i : word) mirrored.push_back(n - i);
  const VectorPath lhs = apply_word(path, word).neg_reversed();
  const VectorPath flipped = path.neg_reversed();
  SymmetryReport r;
  r.mirrored_residual = sup_diff(lhs, apply_word(flipped, mirrored, PanelRule::lead), 0.0);
  r.direct_residual = sup_diff(lhs, apply_word(flipped, word), t_min);
  return r;
}

double greene_k_sum(const VectorPath& env, std::size_t k, std::size_t m) {
  const std::size_t n = env.dims();
  const bool ok = (n == 2 && (k == 1 || k == 2)) || (n == 3 && k >= 1 && k <= 3);
  if (!ok) throw UnsupportedSize("greene_k_sum: supported (N,k) are (2,1),(2,2),(3,1),(3,2),(3,3)");
  if (m >= env.points()) throw ArgumentError("greene_k_sum: grid index out of range");
  if (env.first_defined_index() != 0) throw ArgumentError("greene_k_sum: environment must be defined from t_0");
  // Paths live on levels 1..N with energies B_l = W_{N+1-l}.
  auto B = [&](std::size_t l, std::size_t j) { return env(j, n - l); };
  const double log_dt = std::log(env.grid().dt());
  if (k == n) {
    double s = 0.0;
    for (std::size_t l = 1; l <= n; ++l) s += B(l, m);
    return s;
  }
  LogAccumulator acc;
  if (n == 2) {
    // one path jumping 1 -> 2 in panel j
    for (std::size_t j = 1; j <= m; ++j) acc.add(B(1, j - 1) - B(2, j) + log_dt);
    return acc.value() + B(2, m);
  }
  if (k == 1) {
    // one path jumping 1 -> 2 in panel j and 2 -> 3 in a later panel l
    for (std::size_t l = 2; l <= m; ++l)
      for (std::size_t j = 1; j < l; ++j) acc.add(B(1, j - 1) - B(2, j) + B(2, l - 1) - B(3, l) + 2 * log_dt);
    return acc.value() + B(3, m);
  }
  // k = 2: the lower path jumps 1 -> 2 in panel s, the upper one 2 -> 3 in panel u <= s;
  // between u and s level 2 is covered by one path at a time.
  for (std::size_t s = 1; s <= m; ++s)
    for (std::size_t u = 1; u <= s; ++u) acc.add(B(1, s - 1) - B(2, s) + B(2, u - 1) - B(3, u) + 2 * log_dt);
  return acc.value() + B(2, m) + B(3, m);
}

}  // namespace gtoda
