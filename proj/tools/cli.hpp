#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qfl::cli {

enum ExitCode : int {
    ok = 0,
    math_failure = 1,
    input_error = 2,
    budget_exhausted = 3,
};

// args excludes the program name. Reports go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qfl::cli
