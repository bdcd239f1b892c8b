#include <algorithm>
#include <cmath>

#include "gtoda/errors.hpp"
#include "gtoda/grsk.hpp"

namespace gtoda {

namespace {

void require_origin(const VectorPath& p, const char* who) {
  for (std::size_t i = 0; i < p.dims(); ++i)
    if (p.defined_from(i) != 0 || p(0, i) != 0.0) throw ArgumentError(std::string(who) + ": path must start at 0");
}

VectorPath head(const VectorPath& p, std::size_t k) {
  VectorPath out(p.grid(), k);
  for (std::size_t i = 0; i < k; ++i) std::copy(p.coord(i).begin(), p.coord(i).end(), out.coord(i).begin());
  return out;
}

}  // namespace

VectorPath pitman_pi(const VectorPath& path, std::size_t i) {
  if (i < 1 || i + 1 > path.dims()) throw ArgumentError("pitman_pi: index out of range");
  if (path.first_defined_index() != 0) throw ArgumentError("pitman_pi: path must be defined from t_0");
  VectorPath out = path;
  const auto x = path.coord(i - 1);
  const auto y = path.coord(i);
  auto ox = out.coord(i - 1);
  auto oy = out.coord(i);
  double sup = y[0] - x[0];
  for (std::size_t m = 0; m < path.points(); ++m) {
    sup = std::max(sup, y[m] - x[m]);
    ox[m] = x[m] + sup;
    oy[m] = y[m] - sup;
  }
  return out;
}

PatternTrajectory gamma_k(const VectorPath& path, std::size_t k) {
  if (k < 1 || k > path.dims()) throw ArgumentError("gamma_k: level out of range");
  require_origin(path, "gamma_k");
  std::vector<VectorPath> levels;
  VectorPath cur = path;
  levels.push_back(head(cur, 1));
  for (std::size_t j = 2; j <= k; ++j) {
    for (std::size_t i = j - 1; i >= 1; --i) cur = pitman_pi(cur, i);
    levels.push_back(head(cur, j));
  }
  return PatternTrajectory(std::move(levels));
}

VectorPath pitman_transform(const VectorPath& path) { return gamma_k(path, path.dims()).bottom(); }

}  // namespace gtoda
