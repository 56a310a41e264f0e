#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dgro::cli {

enum ExitCode { kOk = 0, kAssertionFailed = 1, kUsage = 2 };

// Runs one subcommand. args excludes the program name. Reports go to out,
// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dgro::cli
