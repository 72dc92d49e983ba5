//===- cli.hpp - Command-line front end ---------------------------------===//
//
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dpllt {

/// Exit codes of `solve`.
inline constexpr int kExitSat = 10;
inline constexpr int kExitUnsat = 20;

/// Runs one command. `args` excludes the program name. Returns the process
/// exit code: 0 on success (and for `solve` on UNKNOWN), 10/20 for
/// `solve` on SAT/UNSAT, 1 on any failure or rejected certificate, and the
/// CLI11 code for usage errors.
int run_command(const std::vector<std::string> &args, std::ostream &out,
                std::ostream &err);

} // namespace dpllt
