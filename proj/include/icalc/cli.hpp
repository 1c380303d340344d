#pragma once

// The icalc command line. Exit codes: 0 ok, 1 usage or parse error,
// 2 invalid system or configuration, 3 negative verdict, 4 search bound
// exhausted.

#include <ostream>
#include <string>
#include <vector>

namespace icalc {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInvalid = 2,
  kExitNegative = 3,
  kExitInconclusive = 4,
};

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace icalc
