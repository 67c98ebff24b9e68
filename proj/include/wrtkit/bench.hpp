#pragma once

#include <string>

namespace wrtkit {

// Wall-clock report of one kernel run: median of `repeats` timed runs after a
// warm-up. `checksum` is the sum of the output values, used by the
// thread-count determinism harness.
struct BenchReport {
    std::string kernel;
    int size = 0;
    int threads = 0;
    double seconds = 0.0;
    double rate = 0.0;  // work items per second, see `units`
    std::string units;
    double checksum = 0.0;
    long long items = 0;
};

// kernel in {project, reduce, radon2d_inverse, radon3d_inverse, kunyansky_iter}
BenchReport run_bench(const std::string& kernel, int n, int threads, int repeats = 5);

// one delimited line: kernel<TAB>size<TAB>threads<TAB>seconds<TAB>rate<TAB>units<TAB>checksum
std::string render_report(const BenchReport& r);

}  // namespace wrtkit
