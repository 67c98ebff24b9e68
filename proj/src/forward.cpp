#include "wrtkit/forward.hpp"

#include <vector>

namespace wrtkit {

namespace {

// Distance from x to the exit of the ball |y| = r along unit direction d,
// together with the entry distance (0 if x is inside). Returns false when the
// half-line misses the ball.
bool ball_exit(const Vec3& x, const Vec3& d, double r, double& t_in, double& t_out) {
    double b = dot(x, d);
    double c = dot(x, x) - r * r;
    double disc = b * b - c;
    if (disc <= 0) return false;
    double sq = std::sqrt(disc);
    t_out = -b + sq;
    if (t_out <= 0) return false;
    t_in = std::max(0.0, -b - sq);
    return true;
}

}  // namespace

double divergent_beam(const VolumeGrid& a, const Vec3& x, const Vec3& theta, double step) {
    double t_in, t_out;
    if (!ball_exit(x, theta, a.grid.r, t_in, t_out)) return 0.0;
    if (step <= 0) step = a.grid.dx();
    // uniform lattice anchored at x; short final segment up to the exit point
    int m = (int)std::floor((t_out - t_in) / step * (1.0 + 1e-12));
    double acc = 0.0;
    double prev = sample_volume(a, {x[0] + t_in * theta[0], x[1] + t_in * theta[1], x[2] + t_in * theta[2]});
    double t_prev = t_in;
    for (int i = 1; i <= m; ++i) {
        double t = t_in + i * step;
        double cur = sample_volume(a, {x[0] + t * theta[0], x[1] + t * theta[1], x[2] + t * theta[2]});
        acc += 0.5 * (prev + cur) * (t - t_prev);
        prev = cur;
        t_prev = t;
    }
    if (t_out > t_prev + 1e-14) {
        double cur = sample_volume(a, {x[0] + t_out * theta[0], x[1] + t_out * theta[1], x[2] + t_out * theta[2]});
        acc += 0.5 * (prev + cur) * (t_out - t_prev);
    }
    return acc;
}

namespace {

struct RayNodes {
    int count = 0;      // number of nodes
    double t0 = 0;      // first node
    double dt = 0;      // uniform spacing
};

// Quadrature lattice for the chord |t| <= sqrt(r^2 - s^2), spacing refitted
// just below `step` so the endpoints are hit exactly.
RayNodes chord_nodes(double r, double s, double step) {
    RayNodes nodes;
    double t2 = r * r - s * s;
    if (t2 <= 0) return nodes;
    double half = std::sqrt(t2);
    int nseg = (int)std::ceil(2.0 * half / step * (1.0 - 1e-12));
    if (nseg < 1) nseg = 1;
    nodes.count = nseg + 1;
    nodes.t0 = -half;
    nodes.dt = 2.0 * half / nseg;
    return nodes;
}

}  // namespace

double ray_transform(const VolumeGrid& f, const WeightEvaluator& w, double z, double s, double phi,
                     double step) {
    if (step <= 0) step = f.grid.dx();
    RayNodes nodes = chord_nodes(f.grid.r, s, step);
    if (nodes.count == 0) return 0.0;
    double c = std::cos(phi), sn = std::sin(phi);
    Vec3 base = {s * c, s * sn, z};
    Vec3 d = {-sn, c, 0.0};

    thread_local std::vector<double> fs, as;
    fs.resize(nodes.count);
    const bool atten = w.is_attenuated();
    if (atten) as.resize(nodes.count);
    for (int q = 0; q < nodes.count; ++q) {
        double t = nodes.t0 + q * nodes.dt;
        Vec3 y = {base[0] + t * d[0], base[1] + t * d[1], base[2] + t * d[2]};
        fs[q] = sample_volume(f, y);
        if (atten) as[q] = sample_volume(w.attenuation(), y);
    }

    double acc = 0.0;
    if (w.is_uniform()) {
        for (int q = 0; q < nodes.count; ++q)
            acc += fs[q] * ((q == 0 || q == nodes.count - 1) ? 0.5 : 1.0);
        return acc * nodes.dt;
    }
    if (atten) {
        // Da at node q = trapezoid tail of the attenuation samples; beyond the
        // chord end the integrand is already outside the support ball.
        double tail = 0.0;
        std::vector<double>& wq = fs;  // reuse: weight*f in place
        for (int q = nodes.count - 1; q >= 0; --q) {
            if (q < nodes.count - 1) tail += 0.5 * (as[q] + as[q + 1]) * nodes.dt;
            wq[q] = std::exp(-tail) * fs[q];
        }
        for (int q = 0; q < nodes.count; ++q)
            acc += wq[q] * ((q == 0 || q == nodes.count - 1) ? 0.5 : 1.0);
        return acc * nodes.dt;
    }
    for (int q = 0; q < nodes.count; ++q) {
        double t = nodes.t0 + q * nodes.dt;
        Vec3 y = {base[0] + t * d[0], base[1] + t * d[1], base[2] + t * d[2]};
        acc += w(y, d) * fs[q] * ((q == 0 || q == nodes.count - 1) ? 0.5 : 1.0);
    }
    return acc * nodes.dt;
}

double ray_transform_reference(const VolumeGrid& f, const WeightEvaluator& w, double z, double s,
                               double phi, double step) {
    if (step <= 0) step = f.grid.dx();
    RayNodes nodes = chord_nodes(f.grid.r, s, step);
    if (nodes.count == 0) return 0.0;
    double c = std::cos(phi), sn = std::sin(phi);
    Vec3 base = {s * c, s * sn, z};
    Vec3 d = {-sn, c, 0.0};
    double acc = 0.0;
    for (int q = 0; q < nodes.count; ++q) {
        double t = nodes.t0 + q * nodes.dt;
        Vec3 y = {base[0] + t * d[0], base[1] + t * d[1], base[2] + t * d[2]};
        double wv = w.is_attenuated()
                        ? std::exp(-divergent_beam(w.attenuation(), y, d, nodes.dt))
                        : w(y, d);
        acc += wv * sample_volume(f, y) * ((q == 0 || q == nodes.count - 1) ? 0.5 : 1.0);
    }
    return acc * nodes.dt;
}

RaySinogram project_all(const VolumeGrid& f, const WeightEvaluator& w, const RayGrid& grid) {
    RaySinogram sino(grid);
    double step = grid.ds();
#pragma omp parallel for collapse(2) schedule(static)
    for (int iz = 0; iz < grid.nz; ++iz)
        for (int iphi = 0; iphi < grid.nphi; ++iphi) {
            double z = grid.z(iz), phi = grid.phi(iphi);
            for (int is = 0; is < grid.ns; ++is)
                sino.at(iz, is, iphi) = ray_transform(f, w, z, grid.s(is), phi, step);
        }
    return sino;
}

double plane_transform_direct(const VolumeGrid& f, const WeightEvaluator& w, double s, double phi,
                              double psi, double step) {
    if (step <= 0) step = f.grid.dx();
    double r = f.grid.r;
    double disk2 = r * r - s * s;
    if (disk2 <= 0) return 0.0;
    double disk = std::sqrt(disk2);
    Vec3 theta = direction(phi, psi);
    Vec3 e1 = ray_direction(phi);          // in-plane ray direction
    Vec3 e2 = cross(theta, e1);            // completes the in-plane frame
    Vec3 base = {s * theta[0], s * theta[1], s * theta[2]};

    int nseg_q = std::max(1, (int)std::ceil(2.0 * disk / step * (1.0 - 1e-12)));
    double dq = 2.0 * disk / nseg_q;
    double acc = 0.0;
    for (int jq = 0; jq <= nseg_q; ++jq) {
        double qv = -disk + jq * dq;
        double chord2 = disk2 - qv * qv;
        if (chord2 <= 0) continue;
        double chord = std::sqrt(chord2);
        int nseg_p = std::max(1, (int)std::ceil(2.0 * chord / step * (1.0 - 1e-12)));
        double dp = 2.0 * chord / nseg_p;
        double row = 0.0;
        for (int jp = 0; jp <= nseg_p; ++jp) {
            double pv = -chord + jp * dp;
            Vec3 y = {base[0] + pv * e1[0] + qv * e2[0], base[1] + pv * e1[1] + qv * e2[1],
                      base[2] + pv * e1[2] + qv * e2[2]};
            double val = sample_volume(f, y);
            if (!w.is_uniform() && val != 0.0) val *= w(y, theta);
            row += val * ((jp == 0 || jp == nseg_p) ? 0.5 : 1.0);
        }
        acc += row * dp * ((jq == 0 || jq == nseg_q) ? 0.5 : 1.0);
    }
    return acc * dq;
}

}  // namespace wrtkit
