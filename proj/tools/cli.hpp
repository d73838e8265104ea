#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace genpip::cli {

/// Runs the command line `args` (without the program name). Returns the
/// process exit code: 0 success, 1 runtime or I/O failure, 2 bad arguments.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace genpip::cli
