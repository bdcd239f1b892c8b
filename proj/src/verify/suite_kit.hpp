#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gtoda/stats.hpp"
#include "gtoda/suites.hpp"

namespace gtoda::suite {

// Typed read access to a merged suite config.
class Ctx {
 public:
  Ctx(SuiteReport& report, SuiteConfig cfg) : report(report), cfg_(std::move(cfg)) {}

  double real(const std::string& key) const;
  std::size_t count(const std::string& key) const;
  /// comma separated list
  std::vector<double> reals(const std::string& key) const;
  /// sample size of a KS comparison; the asymptotic thresholds need n >= 2000
  std::size_t ks_count(const std::string& key) const;
  std::uint64_t seed() const { return report.seed; }
  /// independent seed for the tag-th experiment of this suite
  std::uint64_t sub_seed(std::uint64_t tag) const;

  SuiteReport& report;

 private:
  const std::string& raw(const std::string& key) const;
  SuiteConfig cfg_;
};

std::string fmt(double v);

void grsk_identities(Ctx& c);
void structural(Ctx& c);
void zero_temperature(Ctx& c);
void gt_volume_suite(Ctx& c);
void free_energy(Ctx& c);

void moments(Ctx& c);
void whittaker_engine(Ctx& c);
void bump_stade(Ctx& c);
void asymptotics(Ctx& c);
void critical_point_suite(Ctx& c);
void hartman_watson(Ctx& c);
void intertwinings(Ctx& c);

void matsumoto_yor(Ctx& c);
void entrance_law(Ctx& c);
void gibbs_gig(Ctx& c);
void symmetric_pair_suite(Ctx& c);
void markov_functions(Ctx& c);

}  // namespace gtoda::suite
