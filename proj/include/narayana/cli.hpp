#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace narayana {

/// Runs one command line (without the program name). Returns 0 on success,
/// 1 when a verification fails, 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace narayana
