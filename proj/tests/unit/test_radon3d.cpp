#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wrtkit/forward.hpp"
#include "wrtkit/radon3d.hpp"

using namespace wrtkit;

namespace {

double rms_inside(const VolumeGrid& a, const VolumeGrid& b, double radius) {
    double e2 = 0, cnt = 0;
    const CartesianGrid& g = a.grid;
    for (int k = 0; k < g.n; ++k)
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                Vec3 p = g.node(i, j, k);
                if (dot(p, p) < radius * radius) {
                    e2 += sqr(a.at(i, j, k) - b.at(i, j, k));
                    cnt += 1;
                }
            }
    return std::sqrt(e2 / cnt);
}

}  // namespace

TEST_CASE("fourier route: zero and ball") {
    CartesianGrid g(65);
    PlaneGrid pg(65, 64, 64);
    PlaneSinogram zero(pg);
    VolumeGrid z = radon3d_inverse(zero, g);
    for (double v : z.values) CHECK(v == 0.0);

    PlaneSinogram ball(pg);
    for (int k = 0; k < pg.npsi; ++k)
        for (int j = 0; j < pg.nphi; ++j)
            for (int i = 0; i < pg.ns; ++i) {
                double s = pg.s(i);
                if (s * s < 1) ball.at(i, j, k) = kPi * (1 - s * s);
            }
    VolumeGrid rec = radon3d_inverse(ball, g);
    VolumeGrid one = oracles::ball_volume(g, 2.0, 1.0);  // constant 1 on the whole grid
    CHECK(rms_inside(rec, one, 0.7) < 0.07);
}

TEST_CASE("fourier route: gaussian pair") {
    CartesianGrid g(65);
    PlaneGrid pg(65, 64, 64);
    const double sg = 0.2;
    PlaneSinogram sino(pg);
    for (int k = 0; k < pg.npsi; ++k)
        for (int j = 0; j < pg.nphi; ++j)
            for (int i = 0; i < pg.ns; ++i)
                sino.at(i, j, k) = oracles::gaussian_plane_integral(sg, pg.s(i));
    VolumeGrid rec = radon3d_inverse(sino, g);
    VolumeGrid want = oracles::gaussian_volume(g, sg);
    int c = (g.n - 1) / 2;
    CHECK(std::abs(rec.at(c, c, c) - 1.0) < 0.05);
    double worst = 0;
    for (int k = 0; k < g.n; ++k)
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                Vec3 p = g.node(i, j, k);
                if (dot(p, p) < 0.7 * 0.7)
                    worst = std::max(worst, std::abs(rec.at(i, j, k) - want.at(i, j, k)));
            }
    CHECK(worst < 0.05);
}

TEST_CASE("forward transform against the direct plane oracle") {
    CartesianGrid g(65);
    PlaneGrid pg(65, 32, 16);
    VolumeGrid zero(g);
    PlaneSinogram fz = radon3d_forward(zero, pg);
    for (double v : fz.values) CHECK(std::abs(v) < 1e-12);

    VolumeGrid gau = oracles::gaussian_volume(g, 0.25);
    PlaneSinogram fwd = radon3d_forward(gau, pg);
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> us(10, 54), up(0, 31), uk(0, 15);
    double worst = 0;
    for (int trial = 0; trial < 20; ++trial) {
        int i = us(rng), j = up(rng), k = uk(rng);
        double want = plane_transform_direct(gau, WeightEvaluator::uniform(), pg.s(i), pg.phi(j),
                                             pg.psi(k));
        if (std::abs(want) < 1e-3) continue;
        worst = std::max(worst, std::abs(fwd.at(i, j, k) - want) / std::abs(want));
    }
    CHECK(worst < 0.01);
}

TEST_CASE("3d round trip and linearity") {
    CartesianGrid g(65);
    PlaneGrid pg(65, 64, 64);
    VolumeGrid gau = oracles::gaussian_volume(g, 0.25);
    PlaneSinogram sino = radon3d_forward(gau, pg);
    VolumeGrid rec = radon3d_inverse(sino, g);
    CHECK(rms_inside(rec, gau, 0.7) < 0.05);

    std::mt19937 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    PlaneSinogram a(pg), b(pg), ab(pg);
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        a.values[i] = u(rng);
        b.values[i] = u(rng);
        ab.values[i] = a.values[i] + b.values[i];
    }
    VolumeGrid ra = radon3d_inverse(a, g), rb = radon3d_inverse(b, g), rab = radon3d_inverse(ab, g);
    double scale = 0, diff = 0;
    for (std::size_t i = 0; i < ra.values.size(); ++i) {
        scale = std::max(scale, std::abs(rab.values[i]));
        diff = std::max(diff, std::abs(rab.values[i] - ra.values[i] - rb.values[i]));
    }
    CHECK(diff < 1e-10 * scale);
}

TEST_CASE("gridding route agrees with the filtered backprojection route") {
    CartesianGrid g(33);
    PlaneGrid pg(33, 32, 32);
    VolumeGrid gau = oracles::gaussian_volume(g, 0.3);
    PlaneSinogram sino = radon3d_forward(gau, pg);
    VolumeGrid a = radon3d_inverse(sino, g);
    VolumeGrid b = radon3d_inverse_fbp(sino, g);
    double peak = 0;
    for (double v : a.values) peak = std::max(peak, std::abs(v));
    double worst = 0;
    for (int k = 0; k < g.n; ++k)
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                Vec3 p = g.node(i, j, k);
                if (dot(p, p) < 0.7 * 0.7)
                    worst = std::max(worst, std::abs(a.at(i, j, k) - b.at(i, j, k)));
            }
    CHECK(worst / peak < 0.03);
}
