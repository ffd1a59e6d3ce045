#pragma once

#include <iosfwd>

namespace gauss2d::cli {

// Process exit codes. Stable; documented in the README.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,      // internal error or a failed check (error-report over bound)
  kUsage = 2,        // unknown flag, missing subcommand, invalid combination
  kIo = 3,           // missing input file, unwritable output
  kBadInput = 4,     // malformed image
  kConfig = 5,       // unsupported sigma / latency / geometry
  kContract = 6,     // precondition violated (zero frames, degenerate kernel)
};

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gauss2d::cli
