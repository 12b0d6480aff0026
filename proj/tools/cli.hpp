#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nqc::cli {

enum ExitCode { kOk = 0, kFalsified = 1, kUsage = 2 };

/// Runs one command line (without the program name). JSON goes to out,
/// diagnostics and timing to err.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nqc::cli
