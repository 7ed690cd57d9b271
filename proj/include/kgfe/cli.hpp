#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kgfe::cli {

// Runs one CLI invocation; args excludes the program name.
// Exit codes: 0 success, 1 usage error, 2 parse or data error.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace kgfe::cli
