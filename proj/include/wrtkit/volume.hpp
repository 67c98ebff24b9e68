#pragma once

#include <vector>

#include "wrtkit/grids.hpp"

namespace wrtkit {

// Scalar field on a CartesianGrid. Linear layout: x fastest, then y, then z.
struct VolumeGrid {
    CartesianGrid grid;
    std::vector<double> values;

    VolumeGrid() = default;
    explicit VolumeGrid(const CartesianGrid& g) : grid(g), values(g.size(), 0.0) {}

    double& at(int i, int j, int k) {
        return values[(std::size_t)i + (std::size_t)grid.n * ((std::size_t)j + (std::size_t)grid.n * k)];
    }
    double at(int i, int j, int k) const {
        return values[(std::size_t)i + (std::size_t)grid.n * ((std::size_t)j + (std::size_t)grid.n * k)];
    }
};

// Trilinear interpolation of the 8 surrounding nodes; identically 0 outside
// the node cube and outside the support ball of radius r.
inline double sample_volume(const VolumeGrid& vol, const Vec3& p) {
    const CartesianGrid& g = vol.grid;
    double r = g.r;
    if (p[0] * p[0] + p[1] * p[1] + p[2] * p[2] > r * r) return 0.0;
    double inv = 1.0 / g.dx();
    double fx = (p[0] + r) * inv, fy = (p[1] + r) * inv, fz = (p[2] + r) * inv;
    if (fx < 0 || fy < 0 || fz < 0) return 0.0;
    int i = (int)fx, j = (int)fy, k = (int)fz;
    if (i >= g.n - 1) {
        if (fx > g.n - 1) return 0.0;
        i = g.n - 2;
    }
    if (j >= g.n - 1) {
        if (fy > g.n - 1) return 0.0;
        j = g.n - 2;
    }
    if (k >= g.n - 1) {
        if (fz > g.n - 1) return 0.0;
        k = g.n - 2;
    }
    double ax = fx - i, ay = fy - j, az = fz - k;
    std::size_t n = (std::size_t)g.n, base = i + n * (j + n * k);
    const double* v = vol.values.data();
    double c00 = v[base] * (1 - ax) + v[base + 1] * ax;
    double c10 = v[base + n] * (1 - ax) + v[base + n + 1] * ax;
    double c01 = v[base + n * n] * (1 - ax) + v[base + n * n + 1] * ax;
    double c11 = v[base + n * n + n] * (1 - ax) + v[base + n * n + n + 1] * ax;
    return (c00 * (1 - ay) + c10 * ay) * (1 - az) + (c01 * (1 - ay) + c11 * ay) * az;
}

}  // namespace wrtkit
