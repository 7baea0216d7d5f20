#pragma once

#include "skewkit/error.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace skewkit::cli {

enum ExitCode : int
{
  exit_ok = 0,
  exit_internal = 1,
  exit_usage = 2,
  exit_data = 3,
  exit_simulation = 4
};

int exit_code_for(ErrorCode code);

//! Runs the command line `args` (without the program name). Results go to
//! `out`, diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace skewkit::cli
