#pragma once

// Command-line front end.  run_cli is the whole program minus main(), so
// tests can drive it in-process with captured streams.
//
// Exit codes: 0 success, 1 parse or domain error, 2 hypothesis refused,
// 3 a verification sweep or proposition check found a violation.

#include <iosfwd>
#include <string>
#include <vector>

namespace certquad::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kRefused = 2, kViolation = 3 };

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace certquad::cli
