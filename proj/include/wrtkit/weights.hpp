#pragma once

#include "wrtkit/fft.hpp"
#include "wrtkit/forward.hpp"
#include "wrtkit/volume.hpp"

namespace wrtkit {

// Angular structure of a weight on the volume grid: the zeroth harmonic
// (mean over the in-plane direction circle) and the Fourier coefficients
// c_k(x) = (1/nphi) sum_j W(x, d(phi_j)) exp(-i k phi_j) for k = 1..kmax,
// where d(phi) = (-sin phi, cos phi, 0) is the ray direction. These fields
// serve both the slice-by-slice 2D weight and the reduced 3D weight, which
// coincide pointwise and carry no psi dependence.
struct WeightFields {
    CartesianGrid grid;
    int nphi = 0;
    int kmax = 0;
    std::vector<double> w0;                // N^3, x fastest
    std::vector<std::vector<cdouble>> ck;  // ck[k-1]: N^3 coefficients of order k

    std::size_t voxel(int i, int j, int k) const {
        return (std::size_t)i + (std::size_t)grid.n * ((std::size_t)j + (std::size_t)grid.n * k);
    }
    std::size_t slice_offset(int iz) const { return (std::size_t)grid.n * grid.n * iz; }
};

// W(x, d(phi_j)) for every voxel of slice iz, laid out [j][y][x]. Attenuated
// weights are evaluated by resampling the attenuation onto coordinates
// rotated with the direction and accumulating suffix trapezoid sums, one
// sweep per angle.
std::vector<double> slice_weight_table(const VolumeGrid& atten, int iz, int nphi);

// Full-volume fields of the attenuated weight exp(-Da).
WeightFields attenuation_weight_fields(const VolumeGrid& atten, int nphi, int kmax);

// Fields for W = 1 (w0 = 1, no higher harmonics).
WeightFields uniform_weight_fields(const CartesianGrid& grid, int nphi, int kmax);

// Fourier coefficients c_k, k = 0..kmax, of samples over the uniform phi
// grid (exact for band-limited inputs below the grid Nyquist).
std::vector<cdouble> fourier_coefficients(const double* samples, int nphi, int kmax);

// Spherical-harmonic analysis on the product quadrature of a PlaneGrid:
// coefficients f_{j,l} = sum W(theta) conj(Y_jl) dphi lambda, j <= jmax,
// |l| <= j, of samples laid out [j_phi][k_psi] (phi fastest). Normalized so
// the constant function has f_{0,0} = 1. Requires nphi >= 2*jmax + 2 and
// npsi >= jmax + 1.
struct SphericalCoefficients {
    int jmax = 0;
    std::vector<cdouble> f;  // index j*(j+1) + l, l in [-j, j]

    cdouble at(int j, int l) const { return f[(std::size_t)j * (j + 1) + l]; }
};
SphericalCoefficients spherical_coefficients(const std::vector<double>& samples, const PlaneGrid& pg,
                                             int jmax);

// Orthonormal associated Legendre N_jl P_j^l(t) (no Condon-Shortley phase),
// stable iterative evaluation.
double normalized_assoc_legendre(int j, int l, double t);

}  // namespace wrtkit
