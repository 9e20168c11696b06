#pragma once

// The `pillow` command line.  Exit codes: 0 success, 1 validation error
// (bad flag, matrix, portrait, ...), 2 budget or cap exhausted.

#include "lattes/budget.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace lattes::cli {

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// "N" sets both budgets, "C,F" sets cells and frontier.  Throws
// ValidationError on anything else.
Budget parse_budget(const std::string& text);

// Budget from PILLOW_BUDGET when set, defaults otherwise.
Budget budget_from_env();

// "N" or "A..B" with A <= B.
std::pair<unsigned, unsigned> parse_levels(const std::string& text);

} // namespace lattes::cli
