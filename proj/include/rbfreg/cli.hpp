#pragma once

#include <ostream>

namespace rbfreg::cli {

enum ExitCode : int {
  kSuccess = 0,
  kIoError = 1,
  kUsageError = 2,
  kTopologyNotGuaranteed = 3,
  kNumericalFailure = 4,
};

/// Parses argv and dispatches one subcommand. Results go to `out`,
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rbfreg::cli
