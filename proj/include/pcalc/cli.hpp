#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pcalc {

/// Runs one command line (without the program name). Exit codes: 0 success
/// or property holds, 1 property fails, 2 usage/input error. Output is
/// written to `out` (or --out FILE) only after the command completed.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Randomised algebra-law checks used by `--selftest`; prints one line per
/// law and returns the number of failures.
int run_selftest(std::uint64_t seed, int cases, std::ostream& out);

}  // namespace pcalc
