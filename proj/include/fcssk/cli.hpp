#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fcssk {

/// Entry point of the `fcssk` tool. `args` excludes the program name.
/// Returns the process exit status; errors print one line to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fcssk
