#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bcgame::cli {

enum ExitCode : int { ok = 0, validation_error = 1, convergence_error = 2, verification_error = 3 };

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace bcgame::cli
