#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace corrnet {

// Entry point of the `corrnet` command. `args` excludes the program name.
// Returns the process exit code; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace corrnet
