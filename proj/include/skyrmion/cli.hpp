#pragma once

// Command-line front end. Subcommands: energy, verify, hessian-mode,
// threshold, instability-witness, counterexample, hardy.
//
// Exit status: 0 success / all checks as expected, 1 invalid input,
// 2 check failure, 3 numeric failure.

#include <iosfwd>
#include <string>
#include <vector>

namespace skyrmion::cli {

enum ExitCode : int { ok = 0, invalid_input = 1, check_failure = 2, numeric_failure = 3 };

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace skyrmion::cli
