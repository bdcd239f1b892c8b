#include "gtoda/stats.hpp"

#include <algorithm>
#include <cmath>

#include "gtoda/errors.hpp"

namespace gtoda {

double ks_critical_value(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("ks: alpha must lie in (0, 1)");
  return std::sqrt(-std::log(alpha / 2.0) / 2.0);
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b, double alpha) {
  if (a.empty() || b.empty()) throw ArgumentError("ks_two_sample: empty sample");
  for (const auto* v : {&a, &b})
    for (double x : *v)
      if (std::isnan(x)) throw ArgumentError("ks_two_sample: NaN in sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double n = static_cast<double>(a.size()), m = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  KsResult r;
  r.statistic = d;
  r.threshold = ks_critical_value(alpha) * std::sqrt((n + m) / (n * m));
  r.passed = d <= r.threshold;
  r.n = a.size();
  r.m = b.size();
  r.alpha = alpha;
  return r;
}

KsResult ks_one_sample(std::vector<double> a, const std::function<double(double)>& cdf, double alpha) {
  if (a.empty()) throw ArgumentError("ks_one_sample: empty sample");
  std::sort(a.begin(), a.end());
  const double n = static_cast<double>(a.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double f = cdf(a[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  KsResult r;
  r.statistic = d;
  r.threshold = ks_critical_value(alpha) / std::sqrt(n);
  r.passed = d <= r.threshold;
  r.n = a.size();
  r.alpha = alpha;
  return r;
}

MeanCi mean_ci(const std::vector<double>& v) {
  if (v.size() < 2) throw ArgumentError("mean_ci: need at least two values");
  double s = 0.0;
  for (double x : v) s += x;
  const double mean = s / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()))};
}

double pearson_correlation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) throw ArgumentError("pearson_correlation: size mismatch");
  const double ma = mean_ci(a).mean, mb = mean_ci(b).mean;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace gtoda
