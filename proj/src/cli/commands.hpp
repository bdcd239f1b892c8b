#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gtoda/suites.hpp"

namespace gtoda::cli {

struct Globals {
  std::uint64_t seed = 1;
  bool seed_given = false;
  int threads = 0;
  bool json = false;
  std::string out;
};

struct SimulateOpts {
  std::string kind = "brownian";  // brownian | polymer | ground-state | whittaker | z-pattern
  std::size_t n = 2;
  double horizon = 1.0;
  double dt = 1e-3;
  double beta = 1.0;
  std::vector<double> nu;
  std::vector<double> x0;
};

struct TransformOpts {
  std::string in;
  std::string kind = "grsk";  // grsk | beta | pitman
  double beta = 1.0;
};

struct PsiOpts {
  std::size_t n = 2;
  std::vector<double> x, re, im;
  std::string method = "auto";
};

struct RmtOpts {
  std::size_t n = 2;
  std::size_t reps = 1;
};

struct VerifyOpts {
  std::string suite;
  std::vector<std::string> sets;  // key=value overrides
  bool list = false;
};

struct MomentOpts {
  std::size_t n = 1;
  double s = 1.0;
  double t = 1.0;
};

int simulate(const Globals& g, const SimulateOpts& o, std::ostream& out);
int transform(const Globals& g, const TransformOpts& o, std::ostream& out);
int whittaker_eval(const Globals& g, const PsiOpts& o, std::ostream& out);
int rmt_sample(const Globals& g, const RmtOpts& o, std::ostream& out);
int verify(const Globals& g, const VerifyOpts& o, const SuiteConfig& file_cfg, std::ostream& out);
int moments(const Globals& g, const MomentOpts& o, std::ostream& out);

}  // namespace gtoda::cli
