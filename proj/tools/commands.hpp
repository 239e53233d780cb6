#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "phasequiv/inverse.hpp"

namespace phasequiv::cli {

/// Parse "a..b" or "a" into an index range.
inverse::IndexRange parse_range(const std::string& text);

/// Run the command line given without the program name. Exit codes: 0 success, 1 solver
/// failure, 2 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace phasequiv::cli
