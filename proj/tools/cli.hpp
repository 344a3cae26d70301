// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace noise_sieve::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInternalError = 1,
  kUserError = 2,
};

/// Runs one invocation. `args` excludes the program name. Results go to
/// `out`, error messages and diagnostics (NOISE_SIEVE_LOG) to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace noise_sieve::cli
