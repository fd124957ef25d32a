#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rmb {

/// Entry point of the rmb tool. args excludes the program name. Returns the
/// process exit code: 0 success, 1 usage or input error, 2 convexity check failed.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rmb
