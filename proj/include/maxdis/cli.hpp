#pragma once

#include <string>
#include <vector>

namespace maxdis::cli {

// Exit codes: 0 all requested checks passed, 1 a check missed its tolerance,
// 2 malformed arguments or config, 3 unexpected internal failure.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, char** argv);

}  // namespace maxdis::cli
