#include "gtoda/suites.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "gtoda/errors.hpp"
#include "suite_kit.hpp"

namespace gtoda {

namespace suite {

const std::string& Ctx::raw(const std::string& key) const {
  const auto it = cfg_.find(key);
  if (it == cfg_.end()) throw ArgumentError("suite " + report.suite + ": missing config key " + key);
  return it->second;
}

double Ctx::real(const std::string& key) const {
  const std::string& s = raw(key);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) throw ArgumentError("config " + key + ": not a number: " + s);
  return v;
}

std::size_t Ctx::count(const std::string& key) const {
  const double v = real(key);
  if (!(v >= 1.0) || v != static_cast<double>(static_cast<std::size_t>(v)))
    throw ArgumentError("config " + key + ": expected a positive integer");
  return static_cast<std::size_t>(v);
}

std::vector<double> Ctx::reals(const std::string& key) const {
  std::vector<double> out;
  std::stringstream ss(raw(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ArgumentError("config " + key + ": bad list entry '" + item + "'");
    }
  }
  if (out.empty()) throw ArgumentError("config " + key + ": empty list");
  return out;
}

std::size_t Ctx::ks_count(const std::string& key) const {
  const std::size_t n = count(key);
  if (n < 2000) throw ArgumentError("config " + key + ": KS suites need at least 2000 samples");
  return n;
}

std::uint64_t Ctx::sub_seed(std::uint64_t tag) const {
  // splitmix64 finaliser
  std::uint64_t z = report.seed + 0x9E3779B97F4A7C15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace suite

namespace {

struct Entry {
  const char* name;
  int criterion;
  void (*run)(suite::Ctx&);
  SuiteConfig defaults;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> table = {
      {"grsk-identities", 1, suite::grsk_identities,
       {{"seed", "1001"}, {"envs", "100"}, {"dt", "0.001"}, {"t_min", "0.1"}, {"ns", "2,3,4,5"}}},
      {"structural", 2, suite::structural,
       {{"seed", "1002"}, {"paths", "8"}, {"dt", "0.0001"}, {"t_min", "0.1"}}},
      {"zero-temperature", 3, suite::zero_temperature,
       {{"seed", "1003"}, {"n", "5000"}, {"dt", "5e-05"}, {"ns", "2,3,5"}, {"alpha", "0.01"}, {"refine", "4"}}},
      {"matsumoto-yor", 4, suite::matsumoto_yor,
       {{"seed", "1004"}, {"n", "10000"}, {"dt", "0.0001"}, {"mus", "0,0.5"}, {"alpha", "0.01"}}},
      {"entrance-law", 5, suite::entrance_law, {{"seed", "1005"}, {"n", "10000"}, {"dt", "0.0001"}, {"alpha", "0.01"}}},
      {"moments", 6, suite::moments,
       {{"seed", "1006"}, {"n", "100000"}, {"dt", "0.001"}, {"ss", "0.5,1,2"}, {"t", "1"}, {"ns", "1,2"}}},
      {"moments-n1", 0, suite::moments,
       {{"seed", "1006"}, {"n", "100000"}, {"dt", "0.001"}, {"ss", "0.5,1,2"}, {"t", "1"}, {"ns", "1"}}},
      {"moments-n2", 0, suite::moments,
       {{"seed", "1006"}, {"n", "100000"}, {"dt", "0.001"}, {"ss", "0.5,1,2"}, {"t", "1"}, {"ns", "2"}}},
      {"whittaker-engine", 7, suite::whittaker_engine, {{"seed", "1007"}, {"points", "20"}}},
      {"bump-stade", 8, suite::bump_stade, {{"seed", "1008"}}},
      {"asymptotics", 9, suite::asymptotics, {{"seed", "1009"}, {"betas", "8,16,24,32,40"}}},
      {"critical-point", 10, suite::critical_point_suite, {{"seed", "1010"}, {"ns", "2,3,4"}}},
      {"gibbs-gig", 11, suite::gibbs_gig, {{"seed", "1011"}, {"n", "10000"}, {"alpha", "0.01"}}},
      {"hartman-watson", 12, suite::hartman_watson, {{"seed", "1012"}, {"t0", "0.3"}, {"t1", "40"}}},
      {"gt-volume", 13, suite::gt_volume_suite, {{"seed", "1013"}, {"samples", "2000000"}, {"ns", "3,4"}}},
      {"symmetric-pair", 14, suite::symmetric_pair_suite,
       {{"seed", "1014"}, {"n", "10000"}, {"dt", "0.0001"}, {"alpha", "0.01"}}},
      {"markov-functions", 15, suite::markov_functions,
       {{"seed", "1015"}, {"n", "10000"}, {"dt", "0.00025"}, {"alpha", "0.01"}}},
      {"free-energy", 16, suite::free_energy,
       {{"seed", "1016"}, {"n", "200"}, {"beta", "1"}, {"dt", "0.01"}, {"reps", "20"}}},
      {"intertwinings", 17, suite::intertwinings, {{"seed", "1017"}, {"theta", "0.4"}}},
  };
  return table;
}

const Entry& lookup(const std::string& name) {
  for (const auto& e : registry())
    if (name == e.name) return e;
  throw ArgumentError("unknown suite: " + name);
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& e : registry()) out.emplace_back(e.name);
  return out;
}

SuiteConfig suite_defaults(const std::string& name) { return lookup(name).defaults; }

std::string suite_for_criterion(int k) {
  for (const auto& e : registry())
    if (e.criterion == k) return e.name;
  throw ArgumentError("no acceptance criterion " + std::to_string(k));
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& overrides) {
  const Entry& e = lookup(name);
  SuiteConfig cfg = e.defaults;
  for (const auto& [k, v] : overrides) {
    if (!cfg.count(k)) throw ArgumentError("suite " + name + ": unknown config key " + k);
    cfg[k] = v;
  }
  SuiteReport report;
  report.suite = name;
  report.config = cfg;
  try {
    report.seed = std::stoull(cfg.at("seed"));
  } catch (const std::exception&) {
    throw ArgumentError("config seed: expected an unsigned integer");
  }
  const auto t0 = std::chrono::steady_clock::now();
  suite::Ctx ctx(report, cfg);
  e.run(ctx);
  report.finalize_bonferroni();
  report.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace gtoda
