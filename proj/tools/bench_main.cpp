// wrtkit-bench: wall-clock and throughput reporting for the heavy kernels.

#include <iostream>

#include "CLI11.hpp"
#include "wrtkit/bench.hpp"
#include "wrtkit/common.hpp"

int main(int argc, char** argv) {
    CLI::App app{"wrtkit kernel benchmarks"};
    std::string kernel = "project";
    int n = 65, threads = 0, repeats = 5;
    app.add_option("--kernel", kernel, "project|reduce|radon2d_inverse|radon3d_inverse|kunyansky_iter");
    app.add_option("--n", n, "problem size (grid points per axis)");
    app.add_option("--threads", threads, "0 = all cores");
    app.add_option("--repeats", repeats, "timed runs (median reported)");
    CLI11_PARSE(app, argc, argv);

    try {
        wrtkit::BenchReport rep = wrtkit::run_bench(kernel, n, threads, repeats);
        std::cout << "kernel\tsize\tthreads\tseconds\trate\tunits\tchecksum\n";
        std::cout << wrtkit::render_report(rep) << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
