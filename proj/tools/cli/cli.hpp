#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace relent::cli {

enum ExitCode : int {
    kSuccess = 0,
    kViolation = 1,  ///< a certified inequality failed
    kUsage = 2,      ///< bad invocation or domain error
};

/// Runs one command. `args` excludes the program name. Reports go to `out`,
/// diagnostics to `err`; `color` only affects diagnostics.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color = false);

}  // namespace relent::cli
