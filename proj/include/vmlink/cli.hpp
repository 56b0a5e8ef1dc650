#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vmlink {

// Runs the command line given argv-style arguments (without the program
// name). Results go to `out` as one JSON object per line; diagnostics to
// `err`. Exit status: 0 success, 1 usage error, 2 theorem violation.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vmlink
