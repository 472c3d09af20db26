#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hyperhom::cli {

/// Runs one command line. The JSON report goes to `out`, the human summary to `err`.
/// Exit codes: 0 success, 1 input error (bad flags, files, cap exceeded), 2 internal invariant violation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperhom::cli
