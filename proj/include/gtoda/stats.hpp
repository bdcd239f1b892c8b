#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gtoda {

struct KsResult {
  double statistic = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::size_t n = 0, m = 0;  ///< m = 0 for the one-sample test
  double alpha = 0.0;
};

/// c(alpha) = sqrt(-ln(alpha/2)/2).
double ks_critical_value(double alpha);
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b, double alpha);
KsResult ks_one_sample(std::vector<double> a, const std::function<double(double)>& cdf, double alpha);

struct MeanCi {
  double mean = 0.0;
  double std_error = 0.0;
};
MeanCi mean_ci(const std::vector<double>& v);
double pearson_correlation(const std::vector<double>& a, const std::vector<double>& b);

struct Check {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::optional<double> bonferroni_threshold;  ///< statistical checks only
  std::optional<bool> bonferroni_passed;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> config;  ///< grid/cfg echo
  std::map<std::string, double> statistics;   ///< extra named values
  std::vector<Check> checks;
  double runtime_s = 0.0;

  bool passed() const;
  bool passed_bonferroni() const;
  /// statistic <= threshold
  void add_max(const std::string& name, double statistic, double threshold);
  /// statistic >= threshold
  void add_min(const std::string& name, double statistic, double threshold);
  void add_flag(const std::string& name, bool ok);
  void add_ks(const std::string& name, const KsResult& ks);
  /// Fill the Bonferroni-adjusted thresholds once all KS checks are in.
  void finalize_bonferroni();
  std::string to_json(bool include_runtime = true) const;
};

}  // namespace gtoda
