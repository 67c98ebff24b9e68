#include "wrtkit/selftest.hpp"

#include <cmath>
#include <functional>
#include <ostream>

#include "wrtkit/kunyansky.hpp"
#include "wrtkit/noise.hpp"
#include "wrtkit/phantoms.hpp"
#include "wrtkit/pipeline.hpp"
#include "wrtkit/reduce.hpp"

namespace wrtkit {

namespace {

VolumeGrid gaussian_volume(const CartesianGrid& g, double sigma) {
    VolumeGrid vol(g);
    for (int k = 0; k < g.n; ++k)
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                Vec3 p = g.node(i, j, k);
                vol.at(i, j, k) = std::exp(-dot(p, p) / (2.0 * sigma * sigma));
            }
    return vol;
}

VolumeGrid ball_volume(const CartesianGrid& g, double radius, double value) {
    VolumeGrid vol(g);
    for (int k = 0; k < g.n; ++k)
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                Vec3 p = g.node(i, j, k);
                if (dot(p, p) <= radius * radius) vol.at(i, j, k) = value;
            }
    return vol;
}

}  // namespace

bool run_selftest(int n, std::ostream& out) {
    bool all_ok = true;
    auto check = [&](const char* name, bool ok, double detail) {
        out << (ok ? "[pass] " : "[FAIL] ") << name << "  (" << detail << ")\n";
        all_ok = all_ok && ok;
    };

    // quadrature exactness: 3-point rule integrates x^4 exactly
    {
        auto [x, w] = gauss_legendre(3);
        double s = 0.0;
        for (int i = 0; i < 3; ++i) s += w[i] * std::pow(x[i], 4);
        check("gauss-legendre degree-5 exactness", std::abs(s - 0.4) < 1e-12, std::abs(s - 0.4));
    }
    // ray geometry: offset point orthogonal to the offset direction
    {
        Vec3 p = ray_point(0.3, 0.5, 1.1, 0.7);
        Vec3 base = {0.5 * std::cos(1.1), 0.5 * std::sin(1.1), 0.3};
        double d = dot(p - base, {std::cos(1.1), std::sin(1.1), 0.0});
        check("ray parametrization orthogonality", std::abs(d) < 1e-12, std::abs(d));
    }

    CartesianGrid grid(n);
    // ball chord oracle
    {
        VolumeGrid ball = ball_volume(grid, 1.0, 1.0);
        double worst = 0.0;
        for (double s : {0.0, 0.3, 0.6, 0.8}) {
            double got = ray_transform(ball, WeightEvaluator::uniform(), 0.0, s, 0.4);
            double want = 2.0 * std::sqrt(1.0 - s * s);
            worst = std::max(worst, std::abs(got - want) / want);
        }
        check("ball chord projections within 1%", worst < 0.01, worst);
    }
    // Gaussian line-integral oracle
    {
        const double sg = 0.2;
        VolumeGrid gau = gaussian_volume(grid, sg);
        double got = ray_transform(gau, WeightEvaluator::uniform(), 0.1, 0.25, 0.9);
        double d2 = 0.1 * 0.1 + 0.25 * 0.25;
        double want = std::sqrt(2.0 * kPi) * sg * std::exp(-d2 / (2.0 * sg * sg));
        check("gaussian ray transform within 0.5%", std::abs(got - want) / want < 0.005,
              std::abs(got - want) / want);
    }
    // 2D disk reconstruction
    {
        SliceSinogram sino(n, std::max(8, n - 1));
        for (int j = 0; j < sino.nphi; ++j)
            for (int i = 0; i < n; ++i) {
                double s = sino.s(i);
                sino.at(i, j) = s * s < 1 ? 2.0 * std::sqrt(1 - s * s) : 0.0;
            }
        SliceImage rec = radon2d_inverse(sino, grid);
        double err2 = 0.0, cnt = 0.0;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                double x = grid.coord(i), y = grid.coord(j);
                if (x * x + y * y < 0.8 * 0.8) {
                    err2 += sqr(rec.at(i, j) - 1.0);
                    cnt += 1.0;
                }
            }
        double rms = std::sqrt(err2 / cnt);
        check("2d fbp disk rms < 5% inside r=0.8", rms < 0.05, rms);
    }
    // 3D ball reconstruction through the Fourier route
    {
        PlaneGrid pg(n, std::max(8, n - 1), std::max(8, n - 1));
        PlaneSinogram sino(pg);
        for (int k = 0; k < pg.npsi; ++k)
            for (int j = 0; j < pg.nphi; ++j)
                for (int i = 0; i < n; ++i) {
                    double s = pg.s(i);
                    if (s * s < 1) sino.at(i, j, k) = kPi * (1.0 - s * s);
                }
        VolumeGrid rec = radon3d_inverse(sino, grid);
        double err2 = 0.0, cnt = 0.0;
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) {
                    Vec3 p = grid.node(i, j, k);
                    if (dot(p, p) < 0.7 * 0.7) {
                        err2 += sqr(rec.at(i, j, k) - 1.0);
                        cnt += 1.0;
                    }
                }
        double rms = std::sqrt(err2 / cnt);
        check("3d fourier-route ball rms < 7% inside r=0.7", rms < 0.07, rms);
    }
    // reduction vs direct plane transform on a smooth phantom
    {
        VolumeGrid gau = gaussian_volume(grid, 0.25);
        RayGrid rg(n, n, std::max(8, n - 1));
        PlaneGrid pg(n, rg.nphi, rg.nphi);
        RaySinogram rays = project_all(gau, WeightEvaluator::uniform(), rg);
        PlaneSinogram red = reduce(rays, pg);
        double worst = 0.0;
        CounterRng rng(7, 0);
        for (int trial = 0; trial < 12; ++trial) {
            int is = (int)(rng.next_double() * 0.6 * n + 0.2 * n);
            int j = (int)(rng.next_double() * rg.nphi);
            int k = (int)(rng.next_double() * pg.npsi);
            double want = plane_transform_direct(gau, WeightEvaluator::uniform(), pg.s(is),
                                                 pg.phi(j), pg.psi(k));
            if (std::abs(want) < 1e-3) continue;
            worst = std::max(worst, std::abs(red.at(is, j, k) - want) / std::abs(want));
        }
        check("reduce matches direct plane transform < 2%", worst < 0.02, worst);
    }
    // noise determinism and moments
    {
        RayGrid rg(3, 5, 4);
        RaySinogram sino(rg);
        for (auto& v : sino.values) v = 2.0;
        CountSinogram a = sample_counts(sino, 25.0, 42), b = sample_counts(sino, 25.0, 42);
        bool same = a.values == b.values;
        double mean = 0.0;
        CounterRng rng(3, 11);
        const int reps = 20000;
        for (int i = 0; i < reps; ++i) mean += (double)poisson_sample(100.0, rng);
        mean /= reps;
        check("poisson determinism and mean", same && std::abs(mean - 100.0) < 0.3,
              std::abs(mean - 100.0));
    }
    // chang with W = 1 equals plain FBP; kunyansky m = 0 equals chang
    {
        VolumeGrid gau = gaussian_volume(grid, 0.25);
        RayGrid rg(n, n, std::max(8, n - 1));
        RaySinogram rays = project_all(gau, WeightEvaluator::uniform(), rg);
        WeightFields wf = uniform_weight_fields(grid, rg.nphi, 2);
        ExperimentConfig cfg;
        cfg.n = n;
        cfg.nphi = rg.nphi;
        cfg.domain_radius = 0.9;
        cfg.mask_radius = 0.9;
        VolumeGrid chang = reconstruct(Method::chang2d, &rays, nullptr, wf, cfg);
        ExperimentConfig cfg0 = cfg;
        cfg0.m = 0;
        VolumeGrid kun = reconstruct(Method::kun2d, &rays, nullptr, wf, cfg0);
        double diff = 0.0;
        for (std::size_t i = 0; i < chang.values.size(); ++i)
            diff = std::max(diff, std::abs(chang.values[i] - kun.values[i]));
        check("kunyansky m=0 equals chang", diff < 1e-10, diff);

        int iz0 = (n - 1) / 2;
        auto mid = volume_slice_z(chang, iz0);
        double err2 = 0.0, cnt = 0.0;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                double x = grid.coord(i), y = grid.coord(j);
                if (x * x + y * y < 0.8 * 0.8) {
                    err2 += sqr(mid[(std::size_t)i + (std::size_t)n * j] - gau.at(i, j, iz0));
                    cnt += 1;
                }
            }
        check("chang W=1 round trip rms < 5%", std::sqrt(err2 / cnt) < 0.05, std::sqrt(err2 / cnt));
    }

    out << (all_ok ? "selftest: all checks passed\n" : "selftest: FAILURES above\n");
    return all_ok;
}

}  // namespace wrtkit
