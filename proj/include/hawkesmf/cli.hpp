#pragma once

#include <string>
#include <vector>

namespace hawkesmf {

// Full command-line entry point, minus process glue. args excludes argv[0].
// Returns the process exit code: 0 success, 2 configuration error (message
// names the offending field), 1 runtime failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace hawkesmf
