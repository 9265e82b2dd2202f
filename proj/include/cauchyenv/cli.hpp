#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cauchyenv::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailed = 1, kInputError = 2 };

/// Runs one subcommand (abscissa, hurwitz, solve, envelope, reduce, family,
/// verify). args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cauchyenv::cli
