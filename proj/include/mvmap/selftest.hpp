#pragma once

#include <functional>
#include <string>

namespace mvmap {

// Runs the built-in exhaustive invariant suites and reports one line per check
// ("PASS name: detail" or "FAIL name: detail"). Returns the number of failures.
// The full level adds the larger sweeps on top of the quick ones.
int run_selftest(bool full, const std::function<void(const std::string&)>& emit);

}  // namespace mvmap
