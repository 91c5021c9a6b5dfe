#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gapratio::cli {

/// Runs one command line (args[0] is the program name). The JSON report goes
/// to `out`; diagnostics go to `err`. Returns 0 on success, 1 on a domain
/// error, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gapratio::cli
