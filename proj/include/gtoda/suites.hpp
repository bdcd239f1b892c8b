#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gtoda/stats.hpp"

namespace gtoda {

using SuiteConfig = std::map<std::string, std::string>;

/// Registered suite names, in criterion order (moments-n1/-n2 after moments).
std::vector<std::string> suite_names();

/// Default configuration of a suite, including its fixed seed.
SuiteConfig suite_defaults(const std::string& name);

/// Suite that decides acceptance criterion k (1..17).
std::string suite_for_criterion(int k);

/// Run a named suite. `overrides` is merged over the defaults; unknown keys and unknown
/// suite names throw ArgumentError.
SuiteReport run_suite(const std::string& name, const SuiteConfig& overrides = {});

}  // namespace gtoda
