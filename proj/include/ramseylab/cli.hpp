#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ramseylab {

// Parses one command line (program name excluded), runs the subcommand,
// writes the report body to `out` and diagnostics (cache notes, wall time)
// to `err`. Exit codes: 0 computed result — including negative verdicts —
// 2 validation error, 3 budget exceeded, 64 usage error, 1 internal error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace ramseylab
