#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cig::cli {

/// Runs one invocation; `args` excludes the program name. Returns the exit
/// status: 0 success, 1 rejected certificate or non-CI witness, 2 usage or
/// validation error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cig::cli
