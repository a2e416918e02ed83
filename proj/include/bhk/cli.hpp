#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bhk {

/// Workbench entry point. args excludes the program name. The JSON report
/// goes to --out when given (summary to `out`), otherwise to `out` (summary
/// to `err`). Returns 0 verified, 1 refuted, 2 inconclusive, 3 schema or usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bhk
