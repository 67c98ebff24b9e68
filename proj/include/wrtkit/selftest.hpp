#pragma once

#include <iosfwd>

namespace wrtkit {

// Built-in oracle suite: analytic chord, Gaussian and disk/ball oracles, the
// rebinning cross-check, noise determinism and the m = 0 identity, at the
// given grid scale. Prints one pass/fail line per check; returns overall.
bool run_selftest(int n, std::ostream& out);

}  // namespace wrtkit
