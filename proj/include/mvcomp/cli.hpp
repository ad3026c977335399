#pragma once

#include <string>
#include <vector>

namespace mvcomp {

/// Entry point of the `mvcomp` command-line tool. `args` includes the
/// program name. Returns the process exit code; failures print a
/// machine-readable JSON error record to stderr.
int run(const std::vector<std::string>& args);

}  // namespace mvcomp
