#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eqfix {

/// Parses and dispatches one invocation; reports are written to `out` as a
/// single JSON document. Exit codes: 0 pass/success, 1 a checked condition
/// fails, 2 indeterminate, >= 3 input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eqfix
