#pragma once

#include <iosfwd>
#include <string>

#include "gtoda/suites.hpp"

namespace gtoda {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitUsage = 2, kExitNumeric = 3 };

/// Flat `key = value` text; '#' starts a comment. Throws ArgumentError on malformed lines.
SuiteConfig parse_config_text(std::istream& in);
SuiteConfig read_config_file(const std::string& path);

/// Entry point of the `gtoda` tool; output goes to `out` unless --out names a file.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gtoda
