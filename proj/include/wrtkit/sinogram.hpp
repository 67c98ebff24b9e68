#pragma once

#include <cstdint>
#include <vector>

#include "wrtkit/grids.hpp"

namespace wrtkit {

// Ray-transform values (or photon counts after normalization) on a RayGrid.
// Layout: s fastest, then phi, then z; each z-slice is a contiguous
// (ns x nphi) block.
struct RaySinogram {
    RayGrid grid;
    std::vector<double> values;

    RaySinogram() = default;
    explicit RaySinogram(const RayGrid& g) : grid(g), values(g.size(), 0.0) {}

    std::size_t index(int iz, int is, int iphi) const {
        return (std::size_t)is + (std::size_t)grid.ns * ((std::size_t)iphi + (std::size_t)grid.nphi * iz);
    }
    double& at(int iz, int is, int iphi) { return values[index(iz, is, iphi)]; }
    double at(int iz, int is, int iphi) const { return values[index(iz, is, iphi)]; }
    const double* slice(int iz) const { return values.data() + index(iz, 0, 0); }
    double* slice(int iz) { return values.data() + index(iz, 0, 0); }
};

// Integer photon counts with the calibration constant that produced them.
struct CountSinogram {
    RayGrid grid;
    std::vector<std::uint32_t> values;
    double c_n = 0.0;
    std::uint64_t seed = 0;

    CountSinogram() = default;
    explicit CountSinogram(const RayGrid& g) : grid(g), values(g.size(), 0) {}

    std::size_t index(int iz, int is, int iphi) const {
        return (std::size_t)is + (std::size_t)grid.ns * ((std::size_t)iphi + (std::size_t)grid.nphi * iz);
    }
};

// Plane-transform values on a PlaneGrid. Layout: s fastest, then phi, then psi.
struct PlaneSinogram {
    PlaneGrid grid;
    std::vector<double> values;

    PlaneSinogram() = default;
    explicit PlaneSinogram(const PlaneGrid& g) : grid(g), values(g.size(), 0.0) {}

    std::size_t index(int is, int iphi, int ipsi) const {
        return (std::size_t)is + (std::size_t)grid.ns * ((std::size_t)iphi + (std::size_t)grid.nphi * ipsi);
    }
    double& at(int is, int iphi, int ipsi) { return values[index(is, iphi, ipsi)]; }
    double at(int is, int iphi, int ipsi) const { return values[index(is, iphi, ipsi)]; }
};

// One z = const slice of ray data: (ns x nphi), s fastest.
struct SliceSinogram {
    int ns = 0, nphi = 0;
    double r = 1.0;
    std::vector<double> values;

    SliceSinogram() = default;
    SliceSinogram(int ns_, int nphi_, double r_ = 1.0)
        : ns(ns_), nphi(nphi_), r(r_), values((std::size_t)ns_ * nphi_, 0.0) {}

    double ds() const { return 2.0 * r / (ns - 1); }
    double dphi() const { return 2.0 * kPi / nphi; }
    double s(int j) const { return -r + j * ds(); }
    double phi(int k) const { return k * dphi(); }
    double& at(int is, int iphi) { return values[(std::size_t)is + (std::size_t)ns * iphi]; }
    double at(int is, int iphi) const { return values[(std::size_t)is + (std::size_t)ns * iphi]; }
};

// 2D image on the (x, y) section of a CartesianGrid, x fastest.
struct SliceImage {
    CartesianGrid grid;
    std::vector<double> values;

    SliceImage() = default;
    explicit SliceImage(const CartesianGrid& g) : grid(g), values((std::size_t)g.n * g.n, 0.0) {}

    double& at(int i, int j) { return values[(std::size_t)i + (std::size_t)grid.n * j]; }
    double at(int i, int j) const { return values[(std::size_t)i + (std::size_t)grid.n * j]; }
};

}  // namespace wrtkit
