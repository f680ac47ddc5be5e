#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace linetess::cli {

enum ExitCode : int {
  kOk = 0,
  kAssertionFailed = 1,
  kUsage = 2,
  kIo = 3,
};

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace linetess::cli
