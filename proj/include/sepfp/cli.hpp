#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace sepfp {

/// Version recorded in solution manifests; verify rejects manifests from other versions.
std::string_view library_version();

enum ExitCode : int {
  exit_ok = 0,
  exit_input_error = 2,
  exit_not_separable = 3,
  exit_inadmissible_chart = 4,
  exit_verification_failed = 5,
};

/// Runs one command line (without the program name). Reports go to `out` or
/// to --output, diagnostics to `err`. SEPFP_LOG (error, warn, info, debug or
/// 0-3) sets the diagnostic verbosity.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sepfp
