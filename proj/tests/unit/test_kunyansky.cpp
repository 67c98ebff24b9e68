#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wrtkit/kunyansky.hpp"
#include "wrtkit/phantoms.hpp"

using namespace wrtkit;

namespace {

WeightFields synthetic_fields(const CartesianGrid& g, int nphi, double c2_amp) {
    WeightFields wf = uniform_weight_fields(g, nphi, 2);
    for (auto& v : wf.ck[1]) v = cdouble(c2_amp, 0.0);
    return wf;
}

SliceImage random_bump_slice(const CartesianGrid& g, unsigned seed, double radius) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SliceImage img(g);
    double cx = 0.3 * u(rng), cy = 0.3 * u(rng), s = 0.15 + 0.1 * std::abs(u(rng));
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            double x = g.coord(i), y = g.coord(j);
            if (x * x + y * y < radius * radius)
                img.at(i, j) = std::exp(-((x - cx) * (x - cx) + (y - cy) * (y - cy)) / (2 * s * s));
        }
    return img;
}

double slice_rms(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s / v.size());
}

}  // namespace

TEST_CASE("fourier coefficients of direction samples") {
    const int nphi = 32;
    std::vector<double> ones(nphi, 1.0);
    auto c = fourier_coefficients(ones.data(), nphi, 8);
    CHECK(c[0].real() == doctest::Approx(1.0).epsilon(1e-14));
    for (int k = 1; k <= 8; ++k) CHECK(std::abs(c[k]) < 1e-12);

    std::vector<double> cosw(nphi);
    for (int j = 0; j < nphi; ++j) cosw[j] = 1.0 + 0.4 * std::cos(2 * kPi * j / nphi);
    c = fourier_coefficients(cosw.data(), nphi, 8);
    CHECK(c[1].real() == doctest::Approx(0.2).epsilon(1e-13));
    CHECK(std::abs(c[1].imag()) < 1e-13);
    for (int k = 2; k <= 8; ++k) CHECK(std::abs(c[k]) < 1e-12);
}

TEST_CASE("spherical coefficients and Parseval") {
    PlaneGrid pg(9, 36, 17);
    const int jmax = 8;
    std::vector<double> ones((std::size_t)pg.nphi * pg.npsi, 1.0);
    auto f = spherical_coefficients(ones, pg, jmax);
    CHECK(f.at(0, 0).real() == doctest::Approx(1.0).epsilon(1e-13));
    for (int j = 1; j <= jmax; ++j)
        for (int l = -j; l <= j; ++l) CHECK(std::abs(f.at(j, l)) < 1e-12);

    // random band-limited function on the sphere
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> w((std::size_t)pg.nphi * pg.npsi, 0.0);
    double a10 = u(rng), a21 = u(rng), a33 = u(rng), a20 = u(rng);
    for (int k = 0; k < pg.npsi; ++k)
        for (int j = 0; j < pg.nphi; ++j) {
            double t = pg.t[k], phi = pg.phi(j);
            double v = 1.0;
            v += a10 * normalized_assoc_legendre(1, 0, t) * std::sqrt(4 * kPi);
            v += a21 * normalized_assoc_legendre(2, 1, t) * std::cos(phi) * std::sqrt(4 * kPi);
            v += a33 * normalized_assoc_legendre(3, 3, t) * std::sin(3 * phi) * std::sqrt(4 * kPi);
            v += a20 * normalized_assoc_legendre(2, 0, t) * std::sqrt(4 * kPi);
            w[(std::size_t)j + (std::size_t)pg.nphi * k] = v;
        }
    auto fc = spherical_coefficients(w, pg, jmax);
    // quadrature mean square equals the coefficient power sum
    double ms = 0;
    for (int k = 0; k < pg.npsi; ++k)
        for (int j = 0; j < pg.nphi; ++j)
            ms += sqr(w[(std::size_t)j + (std::size_t)pg.nphi * k]) * pg.lambda[k] * pg.dphi();
    ms /= 4 * kPi;
    double power = 0;
    for (int j = 0; j <= jmax; ++j)
        for (int l = -j; l <= j; ++l) power += std::norm(fc.at(j, l));
    CHECK(ms == doctest::Approx(power).epsilon(1e-10));

    CHECK_THROWS_AS(spherical_coefficients(w, pg, 20), DataError);
}

TEST_CASE("psi truncation kernel analytic value") {
    // degree-2 truncation of exp(2 i phi): (5/4) sin^2(psi)
    std::vector<double> t = {-0.9, -0.4, 0.0, 0.3, 0.77};
    auto k22 = psi_truncation_kernel(2, 2, t);
    for (std::size_t i = 0; i < t.size(); ++i)
        CHECK(k22[i] == doctest::Approx(1.25 * (1 - t[i] * t[i])).epsilon(1e-10));
}

TEST_CASE("sigma bound behaviour") {
    CartesianGrid g(33);
    WeightFields unif = uniform_weight_fields(g, 32, 4);
    CHECK(sigma_bound_2d(unif, 16, 0.9, 1) == 0.0);
    CHECK(sigma_bound_2d(unif, 16, 0.9, 2) == 0.0);
    CHECK(sigma_bound_3d(unif, 0.9, 1) == 0.0);

    WeightFields synth = synthetic_fields(g, 32, 0.1);
    CHECK(sigma_bound_2d(synth, 16, 0.9, 0) == 0.0);
    CHECK(sigma_bound_2d(synth, 16, 0.9, 1) == doctest::Approx(0.2).epsilon(1e-12));
    // 3d: multiplier sup of the degree-2 truncation of e^{2 i phi} is 5/4
    CHECK(sigma_bound_3d(synth, 0.9, 1) == doctest::Approx(0.25).epsilon(1e-9));

    // grows with m when higher harmonics are present (weight harmonics to order 4)
    CartesianGrid g65(65);
    VolumeGrid a1 = rasterize(shepp_logan_a1(), g65);
    WeightFields wf = attenuation_weight_fields(a1, 32, 4);
    double s1 = sigma_bound_2d(wf, 32, 0.9, 1);
    double s2 = sigma_bound_2d(wf, 32, 0.9, 2);
    CHECK(s1 > 0.0);
    CHECK(s2 >= s1);
}

TEST_CASE("apply_q identities") {
    CartesianGrid g(33);
    VolumeGrid a1 = rasterize(scale_attenuation(shepp_logan_a1(), 0.5), g);
    WeightFields wf = attenuation_weight_fields(a1, 32, 2);
    SliceImage v = random_bump_slice(g, 5, 0.8);

    KunyanskyConfig cfg;
    cfg.m = 0;
    SliceImage q0 = apply_q_2d(v, wf, 16, cfg, g.n, 32);
    for (double x : q0.values) CHECK(x == 0.0);

    WeightFields unif = uniform_weight_fields(g, 32, 2);
    cfg.m = 1;
    SliceImage q1 = apply_q_2d(v, unif, 16, cfg, g.n, 32);
    for (double x : q1.values) CHECK(std::abs(x) < 1e-14);
}

TEST_CASE("monte-carlo norm probe 2d") {
    CartesianGrid g(65);
    VolumeGrid a1 = rasterize(shepp_logan_a1(), g);
    WeightFields wf = attenuation_weight_fields(a1, 64, 2);
    KunyanskyConfig cfg;
    cfg.m = 1;
    const int iz = 32;
    double sigma = sigma_bound_2d(wf, iz, cfg.domain_radius, 1);
    double worst = 0;
    for (unsigned trial = 0; trial < 20; ++trial) {
        SliceImage u = random_bump_slice(g, 100 + trial, cfg.domain_radius);
        SliceImage qu = apply_q_2d(u, wf, iz, cfg, g.n, 64);
        double ratio = slice_rms(qu.values) / slice_rms(u.values);
        worst = std::max(worst, ratio);
    }
    INFO("sigma ", sigma, " measured sup ratio ", worst);
    CHECK(worst <= sigma + 0.05);
}

TEST_CASE("monte-carlo norm probe 3d") {
    CartesianGrid g(33);
    PlaneGrid pg(33, 32, 32);
    VolumeGrid a1 = rasterize(shepp_logan_a1(), g);
    WeightFields wf = attenuation_weight_fields(a1, 32, 2);
    KunyanskyConfig cfg;
    cfg.m = 1;
    double sigma = sigma_bound_3d(wf, cfg.domain_radius, 1);
    double worst = 0;
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u01(-1.0, 1.0);
    for (int trial = 0; trial < 8; ++trial) {
        VolumeGrid u(g);
        double cx = 0.3 * u01(rng), cy = 0.3 * u01(rng), cz = 0.3 * u01(rng);
        double s = 0.15 + 0.1 * std::abs(u01(rng));
        for (int k = 0; k < g.n; ++k)
            for (int j = 0; j < g.n; ++j)
                for (int i = 0; i < g.n; ++i) {
                    Vec3 p = g.node(i, j, k);
                    if (dot(p, p) < sqr(cfg.domain_radius))
                        u.at(i, j, k) = std::exp(
                            -(sqr(p[0] - cx) + sqr(p[1] - cy) + sqr(p[2] - cz)) / (2 * s * s));
                }
        VolumeGrid qu = apply_q_3d(u, wf, cfg, pg, {1.25, 2, 0});
        double ratio = slice_rms(qu.values) / slice_rms(u.values);
        worst = std::max(worst, ratio);
    }
    INFO("sigma ", sigma, " measured sup ratio ", worst);
    CHECK(worst <= sigma + 0.05);
}

TEST_CASE("solver: m = 0 equals chang and refusal at sigma >= 1") {
    const int n = 65;
    CartesianGrid g(n);
    VolumeGrid atten = rasterize(shepp_logan_a2(), g);
    VolumeGrid act = rasterize(activity_f2(), g);
    RayGrid rg(n, n, 32);
    RaySinogram rays = project_all(act, WeightEvaluator::attenuated(atten), rg);
    WeightFields wf = attenuation_weight_fields(atten, 32, 2);

    KunyanskyConfig cfg;
    cfg.m = 0;
    cfg.domain_radius = 0.9;
    const int iz = 32;
    SliceSinogram slice(rg.ns, rg.nphi, rg.r);
    std::copy(rays.slice(iz), rays.slice(iz) + slice.values.size(), slice.values.begin());
    SliceImage kun = kunyansky2d(slice, wf, iz, cfg);

    SliceImage w0s(g);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) w0s.at(i, j) = wf.w0[wf.slice_offset(iz) + i + (std::size_t)n * j];
    double disk_r = std::sqrt(mask_disk_radius2(cfg.domain_radius, g.coord(iz)));
    SliceImage ch = chang2d(slice, w0s, disk_r);
    double worst = 0;
    for (std::size_t i = 0; i < kun.values.size(); ++i)
        worst = std::max(worst, std::abs(kun.values[i] - ch.values[i]));
    CHECK(worst < 1e-10);

    WeightFields bad = synthetic_fields(g, 32, 0.7);  // sigma = 1.4
    KunyanskyConfig cfg1;
    cfg1.m = 1;
    CHECK_THROWS_AS(kunyansky2d(slice, bad, iz, cfg1), NumericalError);
}

TEST_CASE("solver: geometric convergence and fixed point recovery") {
    const int n = 65;
    CartesianGrid g(n);
    VolumeGrid atten = rasterize(shepp_logan_a2(), g);
    VolumeGrid act = rasterize(activity_f2(), g);
    RayGrid rg(n, n, 32);
    RaySinogram rays = project_all(act, WeightEvaluator::attenuated(atten), rg);
    WeightFields wf = attenuation_weight_fields(atten, 32, 2);

    KunyanskyConfig cfg;
    cfg.m = 1;
    cfg.tol = 1e-8;
    const int iz = 32;
    SliceSinogram slice(rg.ns, rg.nphi, rg.r);
    std::copy(rays.slice(iz), rays.slice(iz) + slice.values.size(), slice.values.begin());
    SolveLog log;
    kunyansky2d(slice, wf, iz, cfg, &log);
    CHECK(log.sigma < 1.0);
    for (double r : log.ratios) CHECK(r <= log.sigma + 0.05);

    // synthetic fixed point: data g = (I + Q)(w0 f) for a known bump
    SliceImage f = random_bump_slice(g, 77, 0.6);
    SliceImage u_true(g);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        u_true.values[i] = f.values[i] * wf.w0[wf.slice_offset(iz) + i];
    SliceImage qu = apply_q_2d(u_true, wf, iz, cfg, n, 32);
    std::vector<double> gdata(u_true.values.size());
    for (std::size_t i = 0; i < gdata.size(); ++i) gdata[i] = u_true.values[i] + qu.values[i];

    std::vector<double> u = gdata;
    for (int it = 0; it < 60; ++it) {
        SliceImage cur(g);
        cur.values = u;
        SliceImage q = apply_q_2d(cur, wf, iz, cfg, n, 32);
        double delta = 0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            double nu = gdata[i] - q.values[i];
            delta = std::max(delta, std::abs(nu - u[i]));
            u[i] = nu;
        }
        if (delta < 1e-10) break;
    }
    double num = 0, den = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        num += sqr(u[i] - u_true.values[i]);
        den += sqr(u_true.values[i]);
    }
    CHECK(std::sqrt(num / den) < 1e-6 / (1.0 - log.sigma) + 1e-6);
}

TEST_CASE("iteration count does not increase when attenuation weakens") {
    const int n = 65;
    CartesianGrid g(n);
    VolumeGrid act = rasterize(activity_f2(), g);
    RayGrid rg(n, n, 32);
    auto iterations_for = [&](const PhantomSpec& spec) {
        VolumeGrid atten = rasterize(spec, g);
        RaySinogram rays = project_all(act, WeightEvaluator::attenuated(atten), rg);
        WeightFields wf = attenuation_weight_fields(atten, 32, 2);
        SliceSinogram slice(rg.ns, rg.nphi, rg.r);
        std::copy(rays.slice(32), rays.slice(32) + slice.values.size(), slice.values.begin());
        KunyanskyConfig cfg;
        cfg.m = 1;
        cfg.tol = 1e-6;
        SolveLog log;
        kunyansky2d(slice, wf, 32, cfg, &log);
        return log.iterations;
    };
    CHECK(iterations_for(shepp_logan_a2()) <= iterations_for(shepp_logan_a1()));
}
