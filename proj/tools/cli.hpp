#pragma once

#include <iosfwd>
#include <vector>
#include <string>

namespace mdpforge::cli {

/// Runs the command line `args` (args[0] is the program name). Results go to
/// `out` unless redirected with -o, diagnostics to `err`. Returns the process
/// exit code: 0 success, 1 I/O or syntax error, 2 semantic error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mdpforge::cli
