#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dmmc::cli {

enum ExitCode : int {
  kSuccess = 0,
  kAnalysisFailure = 1,
  kInputError = 2,
};

/// Runs the command line `args` (args[0] is the program name). Everything
/// is written to `out` and `err`; nothing touches the process streams, so
/// tests can drive commands in-process.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dmmc::cli
