#pragma once

#include <ostream>

namespace klkit::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitAccuracy = 3,
};

/// Entry point of the klkit tool. Tables go to `out` (or --output),
/// diagnostics and warnings to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace klkit::cli
