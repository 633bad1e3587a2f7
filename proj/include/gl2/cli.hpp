#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gl2::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,       // bad flags, malformed input, missing files
  kIncomplete = 2,  // truncated exploration, horizon exceeded, no result found
  kInternal = 3,    // internal consistency failure or a failed check
};

/// Runs one subcommand. Machine-readable output goes to `out`, logs to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace gl2::cli
