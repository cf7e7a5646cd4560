#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace adscausal {

// Runs one subcommand; args exclude the program name.  Returns the process exit code:
// 0 success, 1 verification or computation failure, 2 usage error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adscausal
