#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "gtoda/errors.hpp"
#include "gtoda/grsk.hpp"

namespace gtoda {

TriangularArray::TriangularArray(std::size_t n, double fill) : n_(n), v_(n * (n + 1) / 2, fill) {
  if (n == 0) throw ArgumentError("TriangularArray: n must be positive");
}

TriangularArray TriangularArray::from_rows(const std::vector<std::vector<double>>& rows) {
  TriangularArray t(rows.size());
  for (std::size_t k = 1; k <= rows.size(); ++k) {
    if (rows[k - 1].size() != k) throw ArgumentError("TriangularArray: row k must have k entries");
    for (std::size_t i = 1; i <= k; ++i) {
      if (!std::isfinite(rows[k - 1][i - 1])) throw ArgumentError("TriangularArray: non-finite entry");
      t(k, i) = rows[k - 1][i - 1];
    }
  }
  return t;
}

std::vector<double> TriangularArray::row(std::size_t k) const {
  return {v_.begin() + offset(k), v_.begin() + offset(k) + k};
}

double TriangularArray::row_sum(std::size_t k) const {
  double s = 0.0;
  for (std::size_t i = 1; i <= k; ++i) s += (*this)(k, i);
  return s;
}

bool is_gelfand_tsetlin(const TriangularArray& t, double tol) {
  for (std::size_t k = 1; k < t.n(); ++k)
    for (std::size_t i = 1; i <= k; ++i)
      if (t(k, i) > t(k + 1, i) + tol || t(k, i) < t(k + 1, i + 1) - tol) return false;
  return true;
}

PatternTrajectory::PatternTrajectory(std::vector<VectorPath> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) throw ArgumentError("PatternTrajectory: no levels");
  for (std::size_t k = 1; k <= levels_.size(); ++k) {
    if (levels_[k - 1].dims() != k) throw ArgumentError("PatternTrajectory: level k must have k coordinates");
    if (!(levels_[k - 1].grid() == levels_[0].grid())) throw ArgumentError("PatternTrajectory: grid mismatch");
  }
}

std::size_t PatternTrajectory::first_complete_index() const {
  std::size_t m = 0;
  for (const auto& l : levels_) m = std::max(m, l.first_defined_index());
  return m;
}

TriangularArray PatternTrajectory::state(std::size_t m) const {
  TriangularArray t(n());
  for (std::size_t k = 1; k <= n(); ++k)
    for (std::size_t i = 1; i <= k; ++i) {
      if (m < levels_[k - 1].defined_from(i - 1))
        throw DomainError("PatternTrajectory::state: entry undefined at this grid index");
      t(k, i) = levels_[k - 1](m, i - 1);
    }
  return t;
}

void write_pattern_csv(std::ostream& os, const PatternTrajectory& traj) {
  os << "t";
  for (std::size_t k = 1; k <= traj.n(); ++k)
    for (std::size_t i = 1; i <= k; ++i) os << ",T_" << k << '_' << i;
  os << '\n' << std::setprecision(17);
  for (std::size_t m = 0; m < traj.grid().points(); ++m) {
    os << traj.grid().t(m);
    for (std::size_t k = 1; k <= traj.n(); ++k)
      for (std::size_t i = 0; i < k; ++i) {
        os << ',';
        if (m < traj.level(k).defined_from(i))
          os << "nan";
        else
          os << traj.level(k)(m, i);
      }
    os << '\n';
  }
}

namespace {

void check_index(const VectorPath& p, std::size_t i, const char* who) {
  if (i < 1 || i + 1 > p.dims()) throw ArgumentError(std::string(who) + ": index out of range");
}

// Shared kernel for all positive-temperature T_i variants. log_offset = -inf for none.
VectorPath apply_panel(const VectorPath& in, std::size_t i, double beta, double log_offset, PanelRule rule) {
  VectorPath out = in;
  const std::size_t a = i - 1, b = i;
  const auto x = in.coord(a);
  const auto y = in.coord(b);
  const std::size_t dx = in.defined_from(a), dy = in.defined_from(b);
  // panel j is usable once both endpoints it reads are defined
  const std::size_t first_panel = rule == PanelRule::lag ? std::max(dy + 1, dx) : std::max(dy, dx + 1);
  const double log_dt = std::log(in.grid().dt());
  const double log_b2 = 2.0 * std::log(beta);
  const std::size_t base = std::max(dx, dy);

  LogAccumulator acc(log_offset);
  std::size_t defined = in.points();
  auto out_a = out.coord(a);
  auto out_b = out.coord(b);
  for (std::size_t m = 0; m < in.points(); ++m) {
    if (m >= 1 && m >= first_panel) {
      const double e = rule == PanelRule::lag ? y[m - 1] - x[m] : y[m] - x[m - 1];
      acc.add(beta * e + log_dt);
    }
    if (m < base || acc.value() == kNegInf) {
      out_a[m] = 0.0;
      out_b[m] = 0.0;
      continue;
    }
    if (defined == in.points()) defined = m;
    const double l = (acc.value() + log_b2) / beta;
    out_a[m] = x[m] + l;
    out_b[m] = y[m] - l;
  }
  out.set_defined_from(a, defined);
  out.set_defined_from(b, defined);
  return out;
}

}  // namespace

VectorPath transform_ti(const VectorPath& path, std::size_t i, PanelRule rule) {
  check_index(path, i, "transform_ti");
  return apply_panel(path, i, 1.0, kNegInf, rule);
}

VectorPath transform_ti_beta(const VectorPath& path, std::size_t i, double beta) {
  check_index(path, i, "transform_ti_beta");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ArgumentError("transform_ti_beta: beta must be positive");
  return apply_panel(path, i, beta, kNegInf, PanelRule::lag);
}

VectorPath transform_ti_offset(const VectorPath& path, std::size_t i, double a) {
  check_index(path, i, "transform_ti_offset");
  if (!std::isfinite(a)) throw ArgumentError("transform_ti_offset: offset must be finite");
  return apply_panel(path, i, 1.0, a, PanelRule::lag);
}

VectorPath apply_word(const VectorPath& path, const std::vector<std::size_t>& word, PanelRule rule) {
  VectorPath cur = path;
  for (std::size_t i : word) cur = transform_ti(cur, i, rule);
  return cur;
}

namespace {

VectorPath head(const VectorPath& p, std::size_t k) {
  VectorPath out(p.grid(), k);
  for (std::size_t i = 0; i < k; ++i) {
    std::copy(p.coord(i).begin(), p.coord(i).end(), out.coord(i).begin());
    out.set_defined_from(i, p.defined_from(i));
  }
  return out;
}

template <class Step>
PatternTrajectory build_levels(const VectorPath& path, std::size_t k, Step step) {
  if (k < 1 || k > path.dims()) throw ArgumentError("transform_pi_k: level out of range");
  std::vector<VectorPath> levels;
  VectorPath cur = path;
  levels.push_back(head(cur, 1));
  for (std::size_t j = 2; j <= k; ++j) {
    for (std::size_t i = j - 1; i >= 1; --i) cur = step(cur, i);
    levels.push_back(head(cur, j));
  }
  return PatternTrajectory(std::move(levels));
}

}  // namespace

PatternTrajectory transform_pi_k(const VectorPath& path, std::size_t k) {
  return build_levels(path, k, [](const VectorPath& p, std::size_t i) { return transform_ti(p, i); });
}

PatternTrajectory transform_t_patterns(const VectorPath& path) { return transform_pi_k(path, path.dims()); }

VectorPath transform_t(const VectorPath& path) { return transform_t_patterns(path).bottom(); }

VectorPath transform_t_beta(const VectorPath& path, double beta) {
  return build_levels(path, path.dims(), [beta](const VectorPath& p, std::size_t i) {
           return transform_ti_beta(p, i, beta);
         }).bottom();
}

PatternTrajectory transform_t_offset(const VectorPath& path, const TriangularArray& z) {
  const std::size_t n = path.dims();
  if (z.n() != n) throw ArgumentError("transform_t_offset: pattern size != path dimension");
  if (path.first_defined_index() != 0) throw ArgumentError("transform_t_offset: path must be defined from t_0");
  std::vector<VectorPath> levels;
  VectorPath row1(path.grid(), 1);
  for (std::size_t m = 0; m < path.points(); ++m) row1(m, 0) = z(1, 1) + path(m, 0) - path(0, 0);
  levels.push_back(row1);
  for (std::size_t k = 2; k <= n; ++k) {
    const VectorPath& prev = levels.back();
    VectorPath cur(path.grid(), k);
    for (std::size_t i = 0; i + 1 < k; ++i) std::copy(prev.coord(i).begin(), prev.coord(i).end(), cur.coord(i).begin());
    const double y0 = z.row_sum(k) - z.row_sum(k - 1);
    for (std::size_t m = 0; m < path.points(); ++m) cur(m, k - 1) = y0 + path(m, k - 1) - path(0, k - 1);
    std::vector<double> a(k, 0.0);
    for (std::size_t i = 1; i < k; ++i) a[i] = a[i - 1] + z(k, i) - z(k - 1, i);
    for (std::size_t i = k - 1; i >= 1; --i) cur = transform_ti_offset(cur, i, a[i]);
    levels.push_back(std::move(cur));
  }
  return PatternTrajectory(std::move(levels));
}

}  // namespace gtoda
