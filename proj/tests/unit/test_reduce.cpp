#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wrtkit/phantoms.hpp"
#include "wrtkit/reduce.hpp"

using namespace wrtkit;

TEST_CASE("psi = pi/2 degenerates to column stacking") {
    // synthetic plane grid node with cos(psi) = 0: z = tau, sigma = s; at
    // s = 0 the tau lattice lands exactly on the z levels
    const int n = 33;
    RayGrid rg(n, n, 8);
    RaySinogram rays(rg);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& v : rays.values) v = u(rng);

    PlaneGrid pg(n, 8, 4);
    pg.t = {0.0, 0.3, -0.3, 0.5};  // first node: psi = pi/2 exactly
    pg.lambda = {0.5, 0.5, 0.5, 0.5};
    PlaneSinogram red = reduce(rays, pg);

    const int is0 = (n - 1) / 2, iphi = 3;
    double want = 0;
    for (int iz = 0; iz < n; ++iz)
        want += rays.at(iz, is0, iphi) * ((iz == 0 || iz == n - 1) ? 0.5 : 1.0);
    want *= rg.dz();
    CHECK(red.at(is0, iphi, 0) == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("unit ball reduces to disk areas") {
    const int n = 65;
    CartesianGrid g(n);
    VolumeGrid ball = oracles::ball_volume(g, 1.0, 1.0);
    RayGrid rg(n, n, 16);
    PlaneGrid pg(n, 16, 8);
    RaySinogram rays = project_all(ball, WeightEvaluator::uniform(), rg);
    PlaneSinogram red = reduce(rays, pg);
    int checked = 0;
    for (int k = 0; k < pg.npsi; k += 2)
        for (int is = 8; is < n - 8; is += 9) {
            double s = pg.s(is);
            double want = kPi * (1 - s * s);
            if (want < 0.3) continue;
            CHECK(red.at(is, 5, k) == doctest::Approx(want).epsilon(0.02));
            ++checked;
        }
    CHECK(checked >= 20);
}

TEST_CASE("reduction matches the direct plane transform") {
    const int n = 65;
    CartesianGrid g(n);
    VolumeGrid gau = oracles::gaussian_volume(g, 0.25);
    RayGrid rg(n, n, 32);
    PlaneGrid pg(n, 32, 32);
    RaySinogram rays = project_all(gau, WeightEvaluator::uniform(), rg);
    PlaneSinogram red = reduce(rays, pg);

    std::mt19937 rng(17);
    std::uniform_int_distribution<int> us(8, n - 9), up(0, 31), uk(0, 31);
    double worst = 0;
    int used = 0;
    for (int trial = 0; trial < 80 && used < 50; ++trial) {
        int is = us(rng), j = up(rng), k = uk(rng);
        double want = plane_transform_direct(gau, WeightEvaluator::uniform(), pg.s(is), pg.phi(j),
                                             pg.psi(k));
        if (std::abs(want) < 5e-3) continue;
        ++used;
        worst = std::max(worst, std::abs(red.at(is, j, k) - want) / std::abs(want));
    }
    CHECK(used >= 50);
    CHECK(worst < 0.02);
}

TEST_CASE("linearity and support") {
    const int n = 33;
    RayGrid rg(n, n, 8);
    PlaneGrid pg(n, 8, 8);
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RaySinogram a(rg), b(rg), ab(rg);
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        a.values[i] = u(rng);
        b.values[i] = u(rng);
        ab.values[i] = 2.0 * a.values[i] + 3.0 * b.values[i];
    }
    PlaneSinogram ra = reduce(a, pg), rb = reduce(b, pg), rab = reduce(ab, pg);
    double scale = 0, diff = 0;
    for (std::size_t i = 0; i < ra.values.size(); ++i) {
        scale = std::max(scale, std::abs(rab.values[i]));
        diff = std::max(diff, std::abs(rab.values[i] - 2.0 * ra.values[i] - 3.0 * rb.values[i]));
    }
    CHECK(diff < 1e-12 * scale);

    // offsets |s| >= R give zero planes
    for (int k = 0; k < pg.npsi; ++k)
        for (int j = 0; j < pg.nphi; ++j) {
            CHECK(rab.at(0, j, k) == 0.0);
            CHECK(rab.at(n - 1, j, k) == 0.0);
        }

    RayGrid other(n, n - 2, 8);
    RaySinogram bad(other);
    CHECK_THROWS_AS(reduce(bad, pg), DataError);
}

TEST_CASE("reduced weight") {
    WeightEvaluator one = WeightEvaluator::uniform();
    CHECK(reduce_weight(one, {0.1, 0.2, 0.3}, 0.7, 0.4) == 1.0);

    // arbitrary direction-dependent weight: psi independence is exact
    WeightEvaluator w = WeightEvaluator::generic([](const Vec3& x, const Vec3& th) {
        return 1.0 + 0.3 * x[0] * th[1] + 0.1 * th[0] * th[2] + 0.05 * x[2];
    });
    Vec3 x = {0.2, -0.1, 0.4};
    for (double phi : {0.0, 1.1, 4.0})
        CHECK(reduce_weight(w, x, phi, 0.3) == doctest::Approx(reduce_weight(w, x, phi, 2.1)).epsilon(1e-15));

    CartesianGrid g(65);
    VolumeGrid a1 = rasterize(shepp_logan_a1(), g);
    WeightEvaluator wa = WeightEvaluator::attenuated(a1);
    double got = reduce_weight(wa, {0, 0, 0}, 0.0);
    double want = wa({0, 0, 0}, {0.0, 1.0, 0.0});  // theta(pi/2, pi/2)
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("reduced w0") {
    PlaneGrid pg(17, 16, 8);
    WeightEvaluator one = WeightEvaluator::uniform();
    CHECK(reduced_w0_sphere(one, {0.3, 0, 0}, pg) == doctest::Approx(1.0).epsilon(1e-13));

    WeightEvaluator pos = WeightEvaluator::generic(
        [](const Vec3& x, const Vec3&) { return 0.5 + 0.25 * x[0] - 0.125 * x[2]; });
    Vec3 p = {0.4, -0.2, 0.3};
    CHECK(reduced_w0_sphere(pos, p, pg) == doctest::Approx(0.5 + 0.1 + 0.0375).epsilon(1e-12));

    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    WeightEvaluator dirw = WeightEvaluator::generic([](const Vec3& x, const Vec3& th) {
        return std::exp(-0.5 * (x[0] * th[0] + 0.3 * th[1]) - 0.2 * x[1] * th[1]);
    });
    for (int i = 0; i < 10; ++i) {
        Vec3 x = {u(rng), u(rng), u(rng)};
        CHECK(reduced_w0_sphere(dirw, x, pg) ==
              doctest::Approx(reduced_w0(dirw, x, pg.nphi)).epsilon(1e-10));
    }
}
