#include <algorithm>
#include <cmath>

#include "json.hpp"

#include "gtoda/stats.hpp"

namespace gtoda {

bool SuiteReport::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

bool SuiteReport::passed_bonferroni() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) {
    return c.bonferroni_passed.value_or(c.passed);
  });
}

void SuiteReport::add_max(const std::string& name, double statistic, double threshold) {
  checks.push_back({name, statistic, threshold, statistic <= threshold, std::nullopt, std::nullopt});
}

void SuiteReport::add_min(const std::string& name, double statistic, double threshold) {
  checks.push_back({name, statistic, threshold, statistic >= threshold, std::nullopt, std::nullopt});
}

void SuiteReport::add_flag(const std::string& name, bool ok) {
  checks.push_back({name, ok ? 1.0 : 0.0, 1.0, ok, std::nullopt, std::nullopt});
}

void SuiteReport::add_ks(const std::string& name, const KsResult& ks) {
  Check c{name, ks.statistic, ks.threshold, ks.passed, std::nullopt, std::nullopt};
  // keep n, m, alpha so the adjusted threshold can be recomputed
  c.bonferroni_threshold = ks.alpha;
  statistics[name + ".n"] = static_cast<double>(ks.n);
  statistics[name + ".m"] = static_cast<double>(ks.m);
  checks.push_back(c);
}

void SuiteReport::finalize_bonferroni() {
  std::size_t k = 0;
  for (const auto& c : checks) k += c.bonferroni_threshold.has_value();
  for (auto& c : checks) {
    if (!c.bonferroni_threshold) continue;
    const double alpha = *c.bonferroni_threshold / static_cast<double>(k);
    const double n = statistics[c.name + ".n"], m = statistics[c.name + ".m"];
    const double scale = m > 0 ? std::sqrt((n + m) / (n * m)) : 1.0 / std::sqrt(n);
    c.bonferroni_threshold = ks_critical_value(alpha) * scale;
    c.bonferroni_passed = c.statistic <= *c.bonferroni_threshold;
  }
}

std::string SuiteReport::to_json(bool include_runtime) const {
  nlohmann::json j;
  j["suite"] = suite;
  j["passed"] = passed();
  j["passed_bonferroni"] = passed_bonferroni();
  j["seed"] = seed;
  j["config"] = config;
  j["statistics"] = statistics;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json cj{{"name", c.name}, {"statistic", c.statistic}, {"threshold", c.threshold}, {"passed", c.passed}};
    if (c.bonferroni_passed) {
      cj["bonferroni_threshold"] = *c.bonferroni_threshold;
      cj["bonferroni_passed"] = *c.bonferroni_passed;
    }
    j["checks"].push_back(cj);
  }
  if (include_runtime) j["runtime_s"] = runtime_s;
  return j.dump(2);
}

}  // namespace gtoda
