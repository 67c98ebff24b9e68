#include "wrtkit/bench.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <sstream>
#include <vector>

#include "wrtkit/kunyansky.hpp"
#include "wrtkit/phantoms.hpp"
#include "wrtkit/pipeline.hpp"
#include "wrtkit/reduce.hpp"

namespace wrtkit {

namespace {

double checksum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

BenchReport run_bench(const std::string& kernel, int n, int threads, int repeats) {
    BenchReport rep;
    rep.kernel = kernel;
    rep.size = n;
    rep.threads = threads;

    int old_threads = omp_get_max_threads();
    if (threads > 0) omp_set_num_threads(threads);

    CartesianGrid grid(n);
    RayGrid rg(n, n, std::max(8, n - 1));
    PlaneGrid pg(n, rg.nphi, rg.nphi);
    VolumeGrid act = rasterize(activity_f2(), grid);
    VolumeGrid atten = rasterize(shepp_logan_a2(), grid);

    std::function<void()> body;
    if (kernel == "project") {
        WeightEvaluator w = WeightEvaluator::attenuated(atten);
        rep.items = (long long)rg.size();
        rep.units = "rays/s";
        body = [&, w]() {
            RaySinogram s = project_all(act, w, rg);
            rep.checksum = checksum(s.values);
        };
    } else if (kernel == "reduce") {
        WeightEvaluator w = WeightEvaluator::attenuated(atten);
        RaySinogram sino = project_all(act, w, rg);
        rep.items = (long long)pg.size();
        rep.units = "planes/s";
        body = [&, sino]() {
            PlaneSinogram p = reduce(sino, pg);
            rep.checksum = checksum(p.values);
        };
    } else if (kernel == "radon2d_inverse") {
        SliceImage img(grid);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) img.at(i, j) = act.at(i, j, (n - 1) / 2);
        SliceSinogram sino = radon2d_forward(img, n, rg.nphi);
        rep.items = (long long)n * n;
        rep.units = "pixels/s";
        body = [&, sino]() {
            SliceImage rec = radon2d_inverse(sino, grid);
            rep.checksum = checksum(rec.values);
        };
    } else if (kernel == "radon3d_inverse") {
        PlaneSinogram sino = radon3d_forward(act, pg);
        rep.items = (long long)grid.size();
        rep.units = "voxels/s";
        body = [&, sino]() {
            VolumeGrid rec = radon3d_inverse(sino, grid);
            rep.checksum = checksum(rec.values);
        };
    } else if (kernel == "kunyansky_iter") {
        WeightFields wf = attenuation_weight_fields(atten, rg.nphi, 2);
        KunyanskyConfig kc;
        kc.m = 1;
        VolumeGrid v = act;
        rep.items = 1;
        rep.units = "iterations/s";
        body = [&, wf, kc]() {
            VolumeGrid q = apply_q_3d(v, wf, kc, pg, {1.25, 2, 0});
            rep.checksum = checksum(q.values);
        };
    } else {
        if (threads > 0) omp_set_num_threads(old_threads);
        throw DataError("bench: unknown kernel '" + kernel + "'");
    }

    body();  // warm-up
    std::vector<double> times;
    for (int i = 0; i < repeats; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        body();
        auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    std::sort(times.begin(), times.end());
    rep.seconds = times[times.size() / 2];
    rep.rate = rep.items / rep.seconds;

    if (threads > 0) omp_set_num_threads(old_threads);
    return rep;
}

std::string render_report(const BenchReport& r) {
    std::ostringstream os;
    os << r.kernel << "\t" << r.size << "\t" << r.threads << "\t" << r.seconds << "\t" << r.rate
       << "\t" << r.units << "\t" << r.checksum;
    return os.str();
}

}  // namespace wrtkit
