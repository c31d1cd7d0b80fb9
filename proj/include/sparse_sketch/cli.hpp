#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sparse_sketch {

// Process exit statuses of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 2,         // malformed input file, flag or argument
  kExitPrecondition = 3,  // a documented algorithm precondition does not hold
  kExitInvariant = 4,     // a deterministic guarantee was observed to fail
};

// Runs one `sparse-sketch` invocation. args excludes the program name.
// Results go to the --output file when given, else to out; diagnostics go
// to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sparse_sketch
