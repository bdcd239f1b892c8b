#include "gtoda/paths.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "gtoda/errors.hpp"

namespace gtoda {

TimeGrid::TimeGrid(double h, std::size_t m) : horizon(h), steps(m) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ArgumentError("TimeGrid: horizon must be positive");
  if (m == 0) throw ArgumentError("TimeGrid: steps must be positive");
}

TimeGrid TimeGrid::coarsened(std::size_t factor) const {
  if (factor == 0 || steps % factor != 0)
    throw ArgumentError("TimeGrid::coarsened: factor must divide the step count");
  return TimeGrid(horizon, steps / factor);
}

DriftVector::DriftVector(std::vector<double> v) : nu(std::move(v)) {
  for (double x : nu)
    if (!std::isfinite(x)) throw ArgumentError("DriftVector: entries must be finite");
}

VectorPath::VectorPath(TimeGrid grid, std::size_t dims)
    : grid_(grid), dims_(dims), values_(grid.points() * dims, 0.0), defined_from_(dims, 0) {
  if (dims == 0) throw ArgumentError("VectorPath: dims must be positive");
}

std::vector<double> VectorPath::at(std::size_t m) const {
  std::vector<double> v(dims_);
  for (std::size_t i = 0; i < dims_; ++i) v[i] = (*this)(m, i);
  return v;
}

std::size_t VectorPath::first_defined_index() const {
  return dims_ == 0 ? 0 : *std::max_element(defined_from_.begin(), defined_from_.end());
}

VectorPath VectorPath::subsample(std::size_t factor) const {
  VectorPath out(grid_.coarsened(factor), dims_);
  for (std::size_t i = 0; i < dims_; ++i) {
    for (std::size_t m = 0; m < out.points(); ++m) out(m, i) = (*this)(m * factor, i);
    out.defined_from_[i] = (defined_from_[i] + factor - 1) / factor;
  }
  return out;
}

VectorPath VectorPath::reversed() const {
  VectorPath out(grid_, dims_);
  for (std::size_t i = 0; i < dims_; ++i) {
    const std::size_t j = dims_ - 1 - i;
    std::copy(coord(j).begin(), coord(j).end(), out.coord(i).begin());
    out.defined_from_[i] = defined_from_[j];
  }
  return out;
}

VectorPath VectorPath::neg_reversed() const {
  VectorPath out = reversed();
  for (double& v : out.values_) v = -v;
  return out;
}

VectorPath sample_brownian_path(std::size_t dims, const DriftVector& drift, const TimeGrid& grid,
                                RngStream& rng) {
  if (dims == 0) throw ArgumentError("sample_brownian_path: dims must be positive");
  if (drift.size() != dims) throw ArgumentError("sample_brownian_path: drift length != dims");
  VectorPath path(grid, dims);
  const double dt = grid.dt();
  const double sd = std::sqrt(dt);
  std::vector<double> x(dims, 0.0);
  for (std::size_t m = 1; m < grid.points(); ++m) {
    for (std::size_t i = 0; i < dims; ++i) {
      x[i] += drift[i] * dt + sd * rng.normal();
      path(m, i) = x[i];
    }
  }
  return path;
}

double log_add_exp(double a, double b) noexcept {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

double log_integral_exp(std::span<const double> f, double dt, std::size_t m) {
  if (m >= f.size()) throw ArgumentError("log_integral_exp: grid index out of range");
  LogAccumulator acc;
  const double log_half_dt = std::log(0.5 * dt);
  for (std::size_t j = 1; j <= m; ++j) acc.add(log_half_dt + log_add_exp(f[j - 1], f[j]));
  return acc.value();
}

std::vector<double> log_cumulative_integral_exp(std::span<const double> f, double dt) {
  std::vector<double> out(f.size(), kNegInf);
  LogAccumulator acc;
  const double log_half_dt = std::log(0.5 * dt);
  for (std::size_t j = 1; j < f.size(); ++j) {
    acc.add(log_half_dt + log_add_exp(f[j - 1], f[j]));
    out[j] = acc.value();
  }
  return out;
}

void write_path_csv(std::ostream& os, const VectorPath& path) {
  os << "t";
  for (std::size_t i = 0; i < path.dims(); ++i) os << ",x" << (i + 1);
  os << '\n' << std::setprecision(17);
  for (std::size_t m = 0; m < path.points(); ++m) {
    os << path.grid().t(m);
    for (std::size_t i = 0; i < path.dims(); ++i) {
      os << ',';
      if (m < path.defined_from(i))
        os << "nan";
      else
        os << path(m, i);
    }
    os << '\n';
  }
}

VectorPath read_path_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("t", 0) != 0)
    throw ArgumentError("read_path_csv: missing header");
  const std::size_t dims = static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));
  if (dims == 0) throw ArgumentError("read_path_csv: no coordinate columns");
  std::vector<std::vector<double>> rows;
  std::vector<double> times;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    bool first = true;
    while (std::getline(ss, cell, ',')) {
      const double v = (cell == "nan") ? std::nan("") : std::stod(cell);
      if (first)
        times.push_back(v);
      else
        row.push_back(v);
      first = false;
    }
    if (row.size() != dims) throw ArgumentError("read_path_csv: ragged row");
    rows.push_back(std::move(row));
  }
  if (rows.size() < 2) throw ArgumentError("read_path_csv: need at least two rows");
  const TimeGrid grid(times.back(), rows.size() - 1);
  VectorPath p(grid, dims);
  for (std::size_t m = 0; m < rows.size(); ++m)
    for (std::size_t i = 0; i < dims; ++i) {
      if (std::isnan(rows[m][i])) {
        if (m != p.defined_from(i)) throw ArgumentError("read_path_csv: nan only allowed as a leading run");
        p.set_defined_from(i, m + 1);
        p(m, i) = 0.0;
      } else {
        p(m, i) = rows[m][i];
      }
    }
  return p;
}

}  // namespace gtoda
