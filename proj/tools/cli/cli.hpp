#pragma once

#include <iosfwd>

namespace nmd::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitInvalidInput = 2,
  kExitIoError = 3,
};

/// Entry point of the `nmd` tool. Normal output goes to `out`, diagnostics to
/// `err`; file outputs are written where --out points.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nmd::cli
