#include "wrtkit/phantoms.hpp"

namespace wrtkit {

namespace {

constexpr double deg = kPi / 180.0;

Ellipsoid ell(double cx, double cy, double cz, double ax, double ay, double az, double rot_deg, double value) {
    Ellipsoid e;
    e.center = {cx, cy, cz};
    e.semi_axes = {ax, ay, az};
    e.rot_z = rot_deg * deg;
    e.value = value;
    return e;
}

// 3D extension of the classical head phantom. Outer shell semi-axes
// (0.69, 0.92, 0.90) grid units = (6.9, 9.2, 9.0) cm at scale 10, i.e. axis
// lengths 13.8, 18.4 and 18 cm. Later entries overwrite earlier ones.
std::vector<Primitive> head_geometry(double bone, double brain, double cavity, double inclusion) {
    std::vector<Primitive> p;
    p.push_back(ell(0, 0, 0, 0.69, 0.92, 0.90, 0, bone));            // cranium
    p.push_back(ell(0, -0.0184, 0, 0.6624, 0.874, 0.88, 0, brain));  // brain tissue
    p.push_back(ell(0.22, 0, 0, 0.11, 0.31, 0.22, -18, cavity));     // right cavity
    p.push_back(ell(-0.22, 0, 0, 0.16, 0.41, 0.28, 18, cavity));     // left cavity
    p.push_back(ell(0, 0.35, -0.15, 0.21, 0.25, 0.41, 0, inclusion));
    p.push_back(ell(0, 0.1, 0.25, 0.046, 0.046, 0.05, 0, inclusion));
    p.push_back(ell(0, -0.1, 0.25, 0.046, 0.046, 0.05, 0, inclusion));
    p.push_back(ell(-0.08, -0.605, 0, 0.046, 0.023, 0.05, 0, inclusion));
    p.push_back(ell(0, -0.606, 0, 0.023, 0.023, 0.02, 0, inclusion));
    p.push_back(ell(0.06, -0.605, 0, 0.023, 0.046, 0.02, 0, inclusion));
    return p;
}

}  // namespace

PhantomSpec shepp_logan_a1() {
    PhantomSpec spec;
    spec.attenuation = true;
    spec.primitives = head_geometry(0.17, 0.15, 0.0, 0.10);
    return spec;
}

PhantomSpec scale_attenuation(const PhantomSpec& spec, double factor) {
    if (factor <= 0) throw DataError("scale_attenuation: factor must be positive");
    PhantomSpec out = spec;
    for (auto& prim : out.primitives)
        std::visit([&](auto& q) { q.value *= factor; }, prim);
    return out;
}

PhantomSpec shepp_logan_a2() { return scale_attenuation(shepp_logan_a1(), 0.1); }

PhantomSpec activity_f1() {
    PhantomSpec spec;
    spec.primitives.push_back(ell(0, -0.0184, 0, 0.6624, 0.874, 0.88, 0, 1.0));
    return spec;
}

PhantomSpec activity_f2() {
    PhantomSpec spec;
    SphericalShell sh;
    sh.center = {0, 0, 0.1};
    sh.r_outer = 0.4;  // 4 cm
    sh.r_inner = 0.2;  // 2 cm
    sh.value = 1.0;
    spec.primitives.push_back(sh);
    return spec;
}

PhantomSpec phantom_by_name(const std::string& name) {
    if (name == "a1") return shepp_logan_a1();
    if (name == "a2") return shepp_logan_a2();
    if (name == "f1") return activity_f1();
    if (name == "f2") return activity_f2();
    throw DataError("unknown phantom name: " + name);
}

VolumeGrid rasterize(const PhantomSpec& spec, const CartesianGrid& grid) {
    if (spec.bounding_radius() > grid.r + 1e-12)
        throw DataError("rasterize: phantom leaves the support ball");
    double scale = spec.attenuation ? spec.scale_cm_per_unit : 1.0;
    VolumeGrid vol(grid);
    int n = grid.n;
#pragma omp parallel for schedule(static)
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                Vec3 p = grid.node(i, j, k);
                if (dot(p, p) > grid.r * grid.r) continue;
                double v = spec.value_at(p);
                if (v != 0.0) vol.at(i, j, k) = v * scale;
            }
    return vol;
}

}  // namespace wrtkit
