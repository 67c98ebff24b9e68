#pragma once

#include <utility>
#include <vector>

#include "wrtkit/common.hpp"

namespace wrtkit {

// Uniform N^3 voxel grid on the cube [-r, r]^3. Node (i,j,k) (0-based) sits at
// (-r + i*dx, -r + j*dx, -r + k*dx). Functions held on it are assumed to be
// supported in the centered ball of radius r.
struct CartesianGrid {
    int n = 0;
    double r = 1.0;

    CartesianGrid() = default;
    CartesianGrid(int n_, double r_ = 1.0) : n(n_), r(r_) {
        if (n < 2) throw DataError("CartesianGrid: need at least 2 nodes per axis");
        if (r <= 0) throw DataError("CartesianGrid: support radius must be positive");
    }

    double dx() const { return 2.0 * r / (n - 1); }
    double coord(int i) const { return -r + i * dx(); }
    Vec3 node(int i, int j, int k) const { return {coord(i), coord(j), coord(k)}; }
    int nearest_index(double x) const {
        int i = (int)std::lround((x + r) / dx());
        return i < 0 ? 0 : (i >= n ? n - 1 : i);
    }
    std::size_t size() const { return (std::size_t)n * n * n; }

    bool operator==(const CartesianGrid& o) const { return n == o.n && r == o.r; }
};

// Ray grid of the acquisition geometry: rays parallel to the xy-plane,
// indexed by slice level z_i, signed offset s_j and in-slice angle phi_k.
struct RayGrid {
    int nz = 0, ns = 0, nphi = 0;
    double r = 1.0;

    RayGrid() = default;
    RayGrid(int nz_, int ns_, int nphi_, double r_ = 1.0) : nz(nz_), ns(ns_), nphi(nphi_), r(r_) {
        if (nz < 2 || ns < 2) throw DataError("RayGrid: nz and ns must be >= 2");
        if (nphi < 1) throw DataError("RayGrid: nphi must be >= 1");
        if (r <= 0) throw DataError("RayGrid: support radius must be positive");
    }

    double dz() const { return 2.0 * r / (nz - 1); }
    double ds() const { return 2.0 * r / (ns - 1); }
    double dphi() const { return 2.0 * kPi / nphi; }
    double z(int i) const { return -r + i * dz(); }
    double s(int j) const { return -r + j * ds(); }
    double phi(int k) const { return k * dphi(); }
    std::size_t size() const { return (std::size_t)nz * ns * nphi; }

    bool operator==(const RayGrid& o) const {
        return nz == o.nz && ns == o.ns && nphi == o.nphi && r == o.r;
    }
};

// Grid on oriented planes: offset s_i, direction theta(phi_j, psi_k) with
// psi_k = arccos(t_k) at Gauss-Legendre nodes t_k. The nodes are interior,
// so no plane direction is ever parallel to the slicing axis e_z.
struct PlaneGrid {
    int ns = 0, nphi = 0, npsi = 0;
    double r = 1.0;
    std::vector<double> t;       // Gauss-Legendre nodes on [-1, 1], ascending
    std::vector<double> lambda;  // matching quadrature weights, sum = 2

    PlaneGrid() = default;
    PlaneGrid(int ns_, int nphi_, int npsi_, double r_ = 1.0);

    double ds() const { return 2.0 * r / (ns - 1); }
    double dphi() const { return 2.0 * kPi / nphi; }
    double s(int i) const { return -r + i * ds(); }
    double phi(int j) const { return j * dphi(); }
    double psi(int k) const { return std::acos(t[k]); }
    std::size_t size() const { return (std::size_t)ns * nphi * npsi; }

    bool compatible_with(const RayGrid& g) const {
        return ns == g.ns && nphi == g.nphi && r == g.r;
    }
};

// Unit direction on the sphere, theta(phi, psi).
struct Direction {
    double phi = 0, psi = 0;
    Direction() = default;
    Direction(double phi_, double psi_) : phi(phi_), psi(psi_) {}
    Vec3 unit() const {
        double sp = std::sin(psi);
        return {sp * std::cos(phi), sp * std::sin(phi), std::cos(psi)};
    }
};

inline Vec3 direction(double phi, double psi) { return Direction(phi, psi).unit(); }

// Point on the ray gamma(z, s, phi) at arclength t. The ray runs along
// (-sin phi, cos phi, 0) and is offset by s along (cos phi, sin phi, 0).
inline Vec3 ray_point(double z, double s, double phi, double t) {
    double c = std::cos(phi), sn = std::sin(phi);
    return {s * c - t * sn, s * sn + t * c, z};
}

inline Vec3 ray_direction(double phi) { return {-std::sin(phi), std::cos(phi), 0.0}; }

// n-point Gauss-Legendre rule on [-1, 1]; nodes ascending. Newton iteration
// on Legendre polynomials, converged to ~1e-15.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

}  // namespace wrtkit
