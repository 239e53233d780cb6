#pragma once

#include <map>
#include <string>

namespace phasequiv::cli {

/// Bundled reference tables keyed by "table1" .. "table8".
const std::map<std::string, std::string>& fixture_tables();

}  // namespace phasequiv::cli
