#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "gtoda/paths.hpp"

namespace gtoda {

/// Real triangular array T_{k,i}, 1 <= i <= k <= n. Indices are 1-based like the math.
class TriangularArray {
 public:
  TriangularArray() = default;
  explicit TriangularArray(std::size_t n, double fill = 0.0);
  /// Rows given top to bottom; row k must have k entries.
  static TriangularArray from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t n() const noexcept { return n_; }
  double operator()(std::size_t k, std::size_t i) const { return v_[offset(k) + i - 1]; }
  double& operator()(std::size_t k, std::size_t i) { return v_[offset(k) + i - 1]; }

  std::vector<double> row(std::size_t k) const;
  std::vector<double> bottom_row() const { return row(n_); }
  double row_sum(std::size_t k) const;

  /// Flat storage, row by row: T_11, T_21, T_22, T_31, ...
  const std::vector<double>& flat() const noexcept { return v_; }
  std::vector<double>& flat() noexcept { return v_; }

  static std::size_t offset(std::size_t k) noexcept { return (k - 1) * k / 2; }

 private:
  std::size_t n_ = 0;
  std::vector<double> v_;
};

/// Interlacing T_{k+1,i+1} <= T_{k,i} <= T_{k+1,i} for all k, i, up to `tol`.
bool is_gelfand_tsetlin(const TriangularArray& t, double tol = 0.0);

/// Pattern-valued path: level k is a k-dimensional VectorPath on a common grid.
class PatternTrajectory {
 public:
  PatternTrajectory() = default;
  explicit PatternTrajectory(std::vector<VectorPath> levels);

  std::size_t n() const noexcept { return levels_.size(); }
  const TimeGrid& grid() const { return levels_.front().grid(); }
  const VectorPath& level(std::size_t k) const { return levels_[k - 1]; }
  VectorPath& level(std::size_t k) { return levels_[k - 1]; }
  const VectorPath& bottom() const { return levels_.back(); }

  /// First grid index at which every entry is defined.
  std::size_t first_complete_index() const;
  TriangularArray state(std::size_t m) const;

 private:
  std::vector<VectorPath> levels_;
};

/// Pattern CSV: header `t,T_1_1,T_2_1,T_2_2,...`; undefined entries written as `nan`.
void write_pattern_csv(std::ostream& os, const PatternTrajectory& traj);

/// Discretization of s -> exp(eta_{i+1}(s) - eta_i(s)) over one panel [t_{j-1}, t_j].
/// `lag` uses eta_{i+1}(t_{j-1}) - eta_i(t_j); `lead` is its time mirror
/// eta_{i+1}(t_j) - eta_i(t_{j-1}). The lag rule makes the polymer recursion and the
/// transform agree exactly on the grid.
enum class PanelRule { lag, lead };

/// (T_i eta)(t) = eta(t) + log int_0^t exp(eta_{i+1} - eta_i) ds (e_i - e_{i+1}); i is 1-based.
VectorPath transform_ti(const VectorPath& path, std::size_t i, PanelRule rule = PanelRule::lag);

/// beta-version: eta + (1/beta) log(beta^2 int exp(beta(eta_{i+1} - eta_i))) (e_i - e_{i+1}).
VectorPath transform_ti_beta(const VectorPath& path, std::size_t i, double beta);

/// Offset version: the integral is replaced by e^{a} + int; defined from t_0.
VectorPath transform_ti_offset(const VectorPath& path, std::size_t i, double a);

/// Apply T_{word[0]}, then T_{word[1]}, ... (first element acts first).
VectorPath apply_word(const VectorPath& path, const std::vector<std::size_t>& word,
                      PanelRule rule = PanelRule::lag);

/// Levels 1..k of Pi_k; level j holds ((Pi_j eta)_i)_{i<=j}.
PatternTrajectory transform_pi_k(const VectorPath& path, std::size_t k);
/// T = Pi_N.
VectorPath transform_t(const VectorPath& path);
/// All intermediate patterns of T.
PatternTrajectory transform_t_patterns(const VectorPath& path);
VectorPath transform_t_beta(const VectorPath& path, double beta);

/// Triangular process started from the pattern z, driven by the path W (W(0) = 0).
/// Row 1 is z_11 + W_1; row k applies T_{k-1}, ..., T_1 with offsets to
/// (row k-1, W_k + y_k) so that the pattern at t_0 equals z exactly.
PatternTrajectory transform_t_offset(const VectorPath& path, const TriangularArray& z);

/// Pitman operator P_i: eta + sup_{s<=t}(eta_{i+1}(s) - eta_i(s)) (e_i - e_{i+1}).
/// Suprema run over grid points, so the result is the exact transform of the
/// piecewise-constant path through the samples.
VectorPath pitman_pi(const VectorPath& path, std::size_t i);
/// Levels 1..k of Gamma_k (zero-temperature Pi_k).
PatternTrajectory gamma_k(const VectorPath& path, std::size_t k);
VectorPath pitman_transform(const VectorPath& path);

/// Largest |sum_i out_i - sum_i in_i| over defined grid points, over every T_i.
double sum_conservation_residual(const VectorPath& path);

struct BraidReport {
  std::vector<double> dts;
  std::vector<double> residuals;
  double slope = 0.0;  ///< least-squares slope of log residual against log dt
  double t_min = 0.0;
};

/// Sup over t >= t_min of |T_i T_{i+1} T_i eta - T_{i+1} T_i T_{i+1} eta| on each grid
/// obtained by subsampling `fine` by the given factors.
BraidReport verify_braid(const VectorPath& fine, std::size_t i,
                         const std::vector<std::size_t>& factors, double t_min);

struct SymmetryReport {
  /// sup |(-s0) T eta - T' (-s0) eta| with T' the mirrored word and mirrored panels;
  /// an exact discrete identity.
  double mirrored_residual = 0.0;
  /// sup |(-s0) T eta - T (-s0) eta| with both sides on the lag rule (t >= t_min).
  double direct_residual = 0.0;
};
SymmetryReport verify_symmetry(const VectorPath& path, double t_min = 0.0);

/// log of the integral over k disjoint up/right paths of exp(total energy), at grid index m,
/// by direct summation over ordered jump times. Supported (N,k): (2,1),(2,2),(3,1),(3,2),(3,3).
double greene_k_sum(const VectorPath& env, std::size_t k, std::size_t m);

}  // namespace gtoda
