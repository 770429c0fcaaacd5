#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hk::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,         // invalid flags, files or configs
  kNotTerminated = 2, // run hit max_steps before a fixed point
  kPropertyFailed = 3 // verify found a violation
};

/// Entry point behind the `hk` executable. `args` excludes the program name.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hk::cli
