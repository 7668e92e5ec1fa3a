#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fockcheck::cli {

/// Full command-line entry point; args excludes the program name.
/// Returns 0 when every check passes, 1 on a failed check, 2 on a
/// configuration or usage error.
int run_app(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fockcheck::cli
