#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mchart::cli {

/// Process exit codes; stable contract for scripts.
enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kUsage = 2,
  kOutOfDomain = 3,
  kVerificationFailed = 4,
};

/// Runs the command line `args` (without the program name). JSON reports go
/// to `out`, human-readable summaries and errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mchart::cli
