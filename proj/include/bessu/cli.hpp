#pragma once

#include <iosfwd>

namespace bessu {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitDataError = 1, kExitUsage = 2 };

/// Entry point behind the `bessu` binary; kept in the library so tests can drive it.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bessu
