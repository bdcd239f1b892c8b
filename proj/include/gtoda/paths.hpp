#pragma once

#include <algorithm>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

#include "gtoda/rng.hpp"

namespace gtoda {

/// Uniform grid 0 = t_0 < ... < t_M = horizon.
struct TimeGrid {
  double horizon = 1.0;
  std::size_t steps = 1;

  TimeGrid() = default;
  TimeGrid(double horizon, std::size_t steps);

  double dt() const noexcept { return horizon / static_cast<double>(steps); }
  /// Grid point m; computed as m*dt, never by accumulation.
  double t(std::size_t m) const noexcept { return static_cast<double>(m) * dt(); }
  std::size_t points() const noexcept { return steps + 1; }
  /// Grid with the same horizon and `factor` times fewer steps.
  TimeGrid coarsened(std::size_t factor) const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

/// Drift per unit time, one entry per coordinate.
struct DriftVector {
  std::vector<double> nu;

  DriftVector() = default;
  explicit DriftVector(std::vector<double> v);
  static DriftVector zero(std::size_t n) { return DriftVector(std::vector<double>(n, 0.0)); }
  std::size_t size() const noexcept { return nu.size(); }
  double operator[](std::size_t i) const { return nu[i]; }
};

/// A path in R^N sampled on a TimeGrid.
///
/// Storage is coordinate-major so that transforms, which sweep one or two coordinates
/// along time, read contiguous memory. Coordinates produced by the geometric RSK
/// transforms have no finite value at t_0 (and nested transforms none for the first few
/// grid points); each coordinate records the first index it is defined from, and stored
/// entries before it are placeholders that must not be read.
class VectorPath {
 public:
  VectorPath() = default;
  VectorPath(TimeGrid grid, std::size_t dims);

  const TimeGrid& grid() const noexcept { return grid_; }
  std::size_t dims() const noexcept { return dims_; }
  std::size_t points() const noexcept { return grid_.points(); }

  /// value of coordinate i (0-based) at grid index m
  double operator()(std::size_t m, std::size_t i) const { return values_[i * points() + m]; }
  double& operator()(std::size_t m, std::size_t i) { return values_[i * points() + m]; }

  std::span<const double> coord(std::size_t i) const {
    return {values_.data() + i * points(), points()};
  }
  std::span<double> coord(std::size_t i) { return {values_.data() + i * points(), points()}; }

  /// Copy of the state at grid index m.
  std::vector<double> at(std::size_t m) const;

  /// First grid index at which coordinate i carries a value (0 for raw paths).
  std::size_t defined_from(std::size_t i) const { return defined_from_[i]; }
  void set_defined_from(std::size_t i, std::size_t m) { defined_from_[i] = m; }
  bool undefined_at_start(std::size_t i) const { return defined_from_[i] > 0; }
  void set_undefined_at_start(std::size_t i) { defined_from_[i] = std::max<std::size_t>(defined_from_[i], 1); }
  /// First grid index at which every coordinate is defined.
  std::size_t first_defined_index() const;

  /// Keep every `factor`-th grid point.
  VectorPath subsample(std::size_t factor) const;
  /// Coordinates reversed: (eta_N, ..., eta_1).
  VectorPath reversed() const;
  /// (-sigma_0) eta = (-eta_N, ..., -eta_1).
  VectorPath neg_reversed() const;

 private:
  TimeGrid grid_;
  std::size_t dims_ = 0;
  std::vector<double> values_;
  std::vector<std::size_t> defined_from_;
};

/// Brownian motion in R^dims with drift, started at 0. Increments are
/// drift*dt + sqrt(dt)*Z with Z drawn in time-major order from `rng`.
VectorPath sample_brownian_path(std::size_t dims, const DriftVector& drift,
                                const TimeGrid& grid, RngStream& rng);

/// Deterministic path from a callable f(t) -> vector of size dims.
template <class F>
VectorPath path_from_function(std::size_t dims, const TimeGrid& grid, F&& f) {
  VectorPath p(grid, dims);
  for (std::size_t m = 0; m < grid.points(); ++m) {
    const auto v = f(grid.t(m));
    for (std::size_t i = 0; i < dims; ++i) p(m, i) = v[i];
  }
  return p;
}

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(exp(a) + exp(b)) without overflow; -inf is the additive identity.
double log_add_exp(double a, double b) noexcept;

/// log of the trapezoid-rule integral of exp(f) over [t_0, t_m].
/// m == 0 returns -infinity (the empty integral).
double log_integral_exp(std::span<const double> f, double dt, std::size_t m);

/// Running version of log_integral_exp for every m; entry 0 is -infinity.
std::vector<double> log_cumulative_integral_exp(std::span<const double> f, double dt);

/// Running log-domain accumulator: value() = log(sum of exp(added terms)).
class LogAccumulator {
 public:
  explicit LogAccumulator(double initial = kNegInf) : value_(initial) {}
  void add(double log_term) noexcept { value_ = log_add_exp(value_, log_term); }
  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// Path CSV: header `t,x1,...,xN`, one row per grid point, 17 significant digits.
/// Entries before a coordinate's first defined index are written as `nan`.
void write_path_csv(std::ostream& os, const VectorPath& path);
VectorPath read_path_csv(std::istream& is);

}  // namespace gtoda
