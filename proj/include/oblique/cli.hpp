#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace oblique::cli {

enum ExitCode : int { kSuccess = 0, kDomainError = 1, kFalse = 2, kIndeterminate = 3 };

// Runs one command (args exclude the program name). Writes exactly one JSON
// result document to out; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oblique::cli
