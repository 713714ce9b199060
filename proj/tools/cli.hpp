#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace egr::cli {

// Exit codes
inline constexpr int kOk = 0;           // success, FORCED, zero violations
inline constexpr int kCounter = 1;      // COUNTEREXAMPLE, nonzero violations
inline constexpr int kFailure = 2;      // INDETERMINATE or any error

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace egr::cli
