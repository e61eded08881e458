#pragma once

#include <ostream>

namespace fdyn::cli {

/// Runs the invariant suite stage by stage, cheapest first, printing one
/// PASS/FAIL line per property. Returns true when every property holds.
bool run_verify(std::ostream& out, int workers);

}  // namespace fdyn::cli
