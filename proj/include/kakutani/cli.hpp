#pragma once

// Command-line front end. Exit codes: 0 spread (or success), 1 not spread,
// 2 boundary or unresolved, 3 bad arguments, 4 resource cap, 5 numeric
// failure, 6 anything else.

#include <ostream>
#include <string>
#include <vector>

namespace kakutani {

enum ExitCode : int {
  kExitSpread = 0,
  kExitNotSpread = 1,
  kExitBoundary = 2,
  kExitUsage = 3,
  kExitResource = 4,
  kExitNumeric = 5,
  kExitInternal = 6,
};

/// args excludes the program name. Caps may be overridden through
/// KAKUTANI_MAX_TILES, KAKUTANI_MAX_SCAN_POINTS and KAKUTANI_MAX_SURVEY_N.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kakutani
