#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "hamlag/error.hpp"

namespace hamlag::cli {

/// Process exit codes; a stable contract.
enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 1,
  kParameterError = 2,
  kVerificationFailure = 3,
  kEmptySearch = 4,
};

int exit_code_for(ErrorKind kind) noexcept;

/// Runs `hamlag <command> --config <path> [--perturb k=v]... [--out <path>]`.
/// `args` excludes the program name. Primary output goes to `out` unless
/// --out (or export.path for sample) names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hamlag::cli
