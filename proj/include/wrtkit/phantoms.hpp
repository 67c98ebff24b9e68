#pragma once

#include <variant>
#include <vector>

#include "wrtkit/volume.hpp"

namespace wrtkit {

// Ellipsoid primitive. Geometry in grid units; rotation about the z-axis by
// angle rot_z (radians) is the only rotation the standard head phantom needs,
// a full 3x3 rotation would be redundant here.
struct Ellipsoid {
    Vec3 center{0, 0, 0};
    Vec3 semi_axes{1, 1, 1};
    double rot_z = 0.0;
    double value = 0.0;

    bool contains(const Vec3& p) const {
        double dx = p[0] - center[0], dy = p[1] - center[1], dz = p[2] - center[2];
        double c = std::cos(rot_z), s = std::sin(rot_z);
        double u = c * dx + s * dy, v = -s * dx + c * dy;
        return sqr(u / semi_axes[0]) + sqr(v / semi_axes[1]) + sqr(dz / semi_axes[2]) <= 1.0;
    }
    double bounding_radius() const {
        double a = std::max(semi_axes[0], std::max(semi_axes[1], semi_axes[2]));
        return norm(center) + a;
    }
};

struct SphericalShell {
    Vec3 center{0, 0, 0};
    double r_inner = 0.0, r_outer = 1.0;
    double value = 0.0;

    bool contains(const Vec3& p) const {
        double d2 = dot(p - center, p - center);
        return d2 >= r_inner * r_inner && d2 <= r_outer * r_outer;
    }
    double bounding_radius() const { return norm(center) + r_outer; }
};

using Primitive = std::variant<Ellipsoid, SphericalShell>;

// Ordered list of primitives with region-override semantics: the value at a
// point is the value of the last primitive containing it, 0 if none does.
// Attenuation values are in cm^-1; scale_cm_per_unit converts path lengths in
// grid units to cm, so rasterized attenuation is stored per grid unit.
struct PhantomSpec {
    std::vector<Primitive> primitives;
    double scale_cm_per_unit = 10.0;
    bool attenuation = false;  // values are cm^-1 and get scaled on rasterization

    double value_at(const Vec3& p) const {
        double v = 0.0;
        for (const auto& prim : primitives)
            std::visit([&](const auto& q) { if (q.contains(p)) v = q.value; }, prim);
        return v;
    }
    double bounding_radius() const {
        double r = 0.0;
        for (const auto& prim : primitives)
            std::visit([&](const auto& q) { r = std::max(r, q.bounding_radius()); }, prim);
        return r;
    }
};

// 3D head phantom, strong attenuation: bone shell 0.17 cm^-1, brain tissue
// 0.15 cm^-1, inclusions 0.10 cm^-1, two zero-valued cavities.
PhantomSpec shepp_logan_a1();

// Same phantom with every attenuation value multiplied by `factor`;
// a2 = scale_attenuation(a1, 0.1).
PhantomSpec scale_attenuation(const PhantomSpec& spec, double factor);
PhantomSpec shepp_logan_a2();

// Activity phantoms: f1 = indicator of the inner brain ellipsoid of a1,
// f2 = unit spherical shell, outer radius 4 cm, inner 2 cm, slightly above
// the phantom center.
PhantomSpec activity_f1();
PhantomSpec activity_f2();

PhantomSpec phantom_by_name(const std::string& name);

// Voxel value = spec value at the voxel center (no antialiasing); attenuation
// is multiplied by scale_cm_per_unit so line integrals in grid units give
// optical lengths directly. Rejects specs that leave the support ball.
VolumeGrid rasterize(const PhantomSpec& spec, const CartesianGrid& grid);

}  // namespace wrtkit
