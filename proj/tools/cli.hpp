#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lambdaseg::cli {

/// Exit codes: 0 success, 1 runtime or data error, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience for tests: `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lambdaseg::cli
