#pragma once

#include <iosfwd>

namespace hpobench {

/// Fast invariant suite; prints one line per check and returns true when all pass.
bool run_selftest(std::ostream& out);

}  // namespace hpobench
