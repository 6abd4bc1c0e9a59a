#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fvsmim {

enum ExitCode { kExitOk = 0, kExitInput = 2, kExitMismatch = 3, kExitOracle = 4 };

/// Runs one command line (without the program name). Reports go to `out` as
/// "key value" lines, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fvsmim
