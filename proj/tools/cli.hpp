#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace trustkatz::cli {

/// Runs the command line `args` (without the program name). Errors are reported as a single
/// JSON line on `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trustkatz::cli
