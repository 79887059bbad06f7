#pragma once

#include <iosfwd>

namespace regdecomp::cli {

// Parses argv, dispatches to exactly one library operation, and writes a
// machine-readable report to --output or `out`. Returns the process exit
// code: 0 success, 1 precondition violation, 2 budget exceeded, 3 I/O error.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace regdecomp::cli
