#pragma once

#include <iosfwd>

namespace drdist::cli {

/// Runs the `drdist` command line. Returns the process exit code:
/// 0 success, 1 internal error, 2 usage, 3 data, 4 degenerate input.
/// Reports go to `out` (or --out), errors as JSON to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace drdist::cli
