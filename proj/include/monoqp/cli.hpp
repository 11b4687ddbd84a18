#pragma once

// Command surface. Exit codes are a stable contract:
//   0 affirmative, 1 negative verdict, 2 usage / parse / guard error.
// The MONOQP_MAX_N environment variable overrides size guards.

#include <iosfwd>
#include <string>
#include <vector>

namespace monoqp::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace monoqp::cli
