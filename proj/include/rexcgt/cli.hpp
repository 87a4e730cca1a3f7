#pragma once

// Command-line front end. Kept in the library so tests can drive it
// without spawning processes.

#include <ostream>
#include <string>
#include <vector>

#include "rexcgt/gameform.hpp"

namespace rexcgt::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kBudgetExceeded = 2, kPreconditionFailed = 3 };

// argv[0] is the program name. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "bool", "one", "chain3", or a poset file.
PosetRef resolve_poset(const std::string& spec);

// A sum of terms separated by '+' outside braces and parentheses. A term
// is a game form over `over`, or "*" and "0" over the unit poset.
Game parse_expression(const std::string& text, const PosetRef& over);

}  // namespace rexcgt::cli
