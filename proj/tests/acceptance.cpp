// One line per acceptance criterion; ctest runs each criterion separately.
#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "gtoda/errors.hpp"
#include "gtoda/suites.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  bool json = false;
  app.add_option("--criterion", only, "Run a single criterion (1-17)")->check(CLI::Range(1, 17));
  app.add_flag("--json", json, "Also print the suite reports");
  CLI11_PARSE(app, argc, argv);

  bool all_ok = true;
  for (int k = 1; k <= 17; ++k) {
    if (only && k != only) continue;
    const std::string suite = gtoda::suite_for_criterion(k);
    try {
      const gtoda::SuiteReport r = gtoda::run_suite(suite);
      for (const auto& c : r.checks)
        std::printf("    %s %s: %.6g (threshold %.6g)\n", c.passed ? "ok  " : "FAIL", c.name.c_str(), c.statistic,
                    c.threshold);
      if (json) std::cout << r.to_json() << '\n';
      std::printf("criterion %2d %-20s %s  (bonferroni %s, %.1f s)\n", k, suite.c_str(), r.passed() ? "PASS" : "FAIL",
                  r.passed_bonferroni() ? "pass" : "fail", r.runtime_s);
      all_ok = all_ok && r.passed();
    } catch (const std::exception& e) {
      std::printf("criterion %2d %-20s FAIL  (error: %s)\n", k, suite.c_str(), e.what());
      all_ok = false;
    }
    std::fflush(stdout);
  }
  return all_ok ? 0 : 1;
}
