#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wrtkit/phantoms.hpp"

using namespace wrtkit;

namespace {

// independent brute-force region-override evaluator
double brute_value(const PhantomSpec& spec, const Vec3& p) {
    double v = 0.0;
    for (const auto& prim : spec.primitives) {
        bool in = std::holds_alternative<Ellipsoid>(prim) ? std::get<Ellipsoid>(prim).contains(p)
                                                          : std::get<SphericalShell>(prim).contains(p);
        if (in)
            v = std::holds_alternative<Ellipsoid>(prim) ? std::get<Ellipsoid>(prim).value
                                                        : std::get<SphericalShell>(prim).value;
    }
    return v;
}

double line_integral_raster(const VolumeGrid& vol, const Vec3& p0, const Vec3& dir) {
    double step = vol.grid.dx() / 2.0;
    int nseg = (int)std::ceil(2.0 * vol.grid.r / step);
    double dt = 2.0 * vol.grid.r / nseg;
    double acc = 0.0;
    for (int q = 0; q <= nseg; ++q) {
        double t = -vol.grid.r + q * dt;
        acc += sample_volume(vol, {p0[0] + t * dir[0], p0[1] + t * dir[1], p0[2] + t * dir[2]}) *
               ((q == 0 || q == nseg) ? 0.5 : 1.0);
    }
    return acc * dt;
}

}  // namespace

TEST_CASE("rasterize basics") {
    CartesianGrid g(33);
    PhantomSpec empty;
    VolumeGrid zero = rasterize(empty, g);
    for (double v : zero.values) CHECK(v == 0.0);

    PhantomSpec ball;
    SphericalShell sh;
    sh.r_inner = 0.0;
    sh.r_outer = 0.5;
    sh.value = 3.0;
    ball.primitives.push_back(sh);
    VolumeGrid vol = rasterize(ball, g);
    CHECK(vol.at(16, 16, 16) == doctest::Approx(3.0));
    CHECK(sample_volume(vol, {0.9, 0, 0}) == 0.0);

    PhantomSpec outside;
    sh.center = {0.9, 0, 0};
    outside.primitives.push_back(sh);
    CHECK_THROWS_AS(rasterize(outside, g), DataError);
}

TEST_CASE("region override matches brute force") {
    PhantomSpec a1 = shepp_logan_a1();
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        Vec3 p = {u(rng), u(rng), u(rng)};
        CHECK(a1.value_at(p) == brute_value(a1, p));
    }
    // cavity interior is exactly zero, all values nonnegative
    CHECK(a1.value_at({0.22, 0.0, 0.0}) == 0.0);
    CHECK(a1.value_at({-0.22, 0.0, 0.0}) == 0.0);
    for (int i = 0; i < 500; ++i) {
        Vec3 p = {u(rng), u(rng), u(rng)};
        CHECK(a1.value_at(p) >= 0.0);
    }
}

TEST_CASE("attenuation scaling") {
    PhantomSpec a1 = shepp_logan_a1();
    PhantomSpec a2 = scale_attenuation(a1, 0.1);
    for (std::size_t i = 0; i < a1.primitives.size(); ++i) {
        double v1 = std::holds_alternative<Ellipsoid>(a1.primitives[i])
                        ? std::get<Ellipsoid>(a1.primitives[i]).value
                        : std::get<SphericalShell>(a1.primitives[i]).value;
        double v2 = std::holds_alternative<Ellipsoid>(a2.primitives[i])
                        ? std::get<Ellipsoid>(a2.primitives[i]).value
                        : std::get<SphericalShell>(a2.primitives[i]).value;
        CHECK(v2 == doctest::Approx(0.1 * v1).epsilon(1e-15));
    }
    CHECK_THROWS_AS(scale_attenuation(a1, 0.0), DataError);
}

TEST_CASE("a1 axis integrals vs analytic chord oracle") {
    PhantomSpec a1 = shepp_logan_a1();
    CartesianGrid g(129);
    VolumeGrid vol = rasterize(a1, g);
    const Vec3 axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    const char* names[3] = {"X", "Y", "Z"};
    const double paper_targets[3] = {2.44, 3.89, 4.81};
    for (int a = 0; a < 3; ++a) {
        double got = line_integral_raster(vol, {0, 0, 0}, axes[a]);
        double want = oracles::phantom_line_integral(a1, {0, 0, 0}, axes[a]);
        INFO("axis ", names[a], " raster ", got, " analytic ", want, " reported optical length ",
             paper_targets[a]);
        CHECK(std::abs(got - want) / want < 0.01);
    }
    // weak attenuation scales the optical lengths linearly
    PhantomSpec a2 = shepp_logan_a2();
    for (int a = 0; a < 3; ++a) {
        double s1 = oracles::phantom_line_integral(a1, {0, 0, 0}, axes[a]);
        double s2 = oracles::phantom_line_integral(a2, {0, 0, 0}, axes[a]);
        CHECK(s2 == doctest::Approx(0.1 * s1).epsilon(1e-12));
    }
}

TEST_CASE("activity phantoms") {
    PhantomSpec f1 = activity_f1();
    CHECK(f1.value_at({0, 0, 0}) == 1.0);
    PhantomSpec f2 = activity_f2();
    CHECK(f2.value_at({0, 0, 0.1}) == 0.0);   // hollow core
    CHECK(f2.value_at({0, 0, 0.4}) == 1.0);   // inside the layer
    CHECK(f2.value_at({0, 0, 0.55}) == 0.0);  // outside

    CartesianGrid g(129);
    VolumeGrid vol = rasterize(f2, g);
    double count = 0;
    for (double v : vol.values) count += v;
    double voxel_volume = std::pow(g.dx(), 3);
    double want = 4.0 / 3.0 * kPi * (std::pow(0.4, 3) - std::pow(0.2, 3));
    CHECK(count * voxel_volume == doctest::Approx(want).epsilon(0.02));
}
