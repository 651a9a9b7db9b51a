#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qsppoly {

/// Exit codes of the command line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidInput = 1,
  kExitBudgetExceeded = 2,
  kExitIllConditioned = 3,
  kExitMemberWithinTol = 4,
  kExitNotMember = 5,
};

/// Runs the command line tool; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qsppoly
