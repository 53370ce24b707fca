#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pclf {

/// Exit codes of dispatch().
enum ExitCode : int {
  kExitOk = 0,
  kExitNegative = 1,  ///< analysis answered "no" (not path-complete, no simulation, invalid certificate)
  kExitInput = 2,     ///< bad arguments, malformed input, cap exceeded
  kExitSolver = 3,    ///< internal solver failure (pivot cap)
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics and warnings to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pclf
