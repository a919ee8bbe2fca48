#pragma once

#include <string>
#include <vector>

namespace recmahler::cli {

enum ExitCode : int { kOk = 0, kError = 1, kFail = 2, kUnknown = 3 };

struct Outcome {
  int exit_code = kOk;
  std::string out;  // what main() prints to stdout
  std::string err;
};

/// Runs one invocation; `args` excludes the program name. Writes the report
/// to --json-out when given, otherwise only returns it.
Outcome run(const std::vector<std::string>& args);

}  // namespace recmahler::cli
