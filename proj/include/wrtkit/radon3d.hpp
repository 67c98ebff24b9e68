#pragma once

#include "wrtkit/fft.hpp"
#include "wrtkit/sinogram.hpp"
#include "wrtkit/volume.hpp"

namespace wrtkit {

// Tuning of the Fourier-slice gridding route. Defaults favour accuracy; the
// iterative solver passes a lighter configuration since it pays these costs
// once per iteration.
struct Radon3dOptions {
    double oversample = 1.5;    // frequency lattice size >= oversample * N
    int kernel_half_width = 3;  // Kaiser-Bessel half-width in lattice cells
    int radial_len = 0;         // profile DFT length; 0 = next_fast_len(4 ns)
};

// Complex-valued plane sinogram, same layout as PlaneSinogram.
struct PlaneSinogramC {
    PlaneGrid grid;
    std::vector<cdouble> values;

    PlaneSinogramC() = default;
    explicit PlaneSinogramC(const PlaneGrid& g) : grid(g), values(g.size(), cdouble(0.0)) {}

    std::size_t index(int is, int iphi, int ipsi) const {
        return (std::size_t)is + (std::size_t)grid.ns * ((std::size_t)iphi + (std::size_t)grid.nphi * ipsi);
    }
};

// Classical (W = 1) plane transform of a volume, evaluated on the plane grid
// through the Fourier slice theorem: oversampled 3D FFT of the deapodized
// volume, Kaiser-Bessel interpolation onto the radial frequency lines, 1D
// inverse DFT per direction.
PlaneSinogram radon3d_forward(const VolumeGrid& vol, const PlaneGrid& grid,
                              const Radon3dOptions& opt = {});
PlaneSinogramC radon3d_forward_complex(const std::vector<cdouble>& values, const CartesianGrid& vg,
                                       const PlaneGrid& grid, const Radon3dOptions& opt = {});

// Inverse of the classical 3D Radon transform: 1D DFT of each s-profile fills
// radial lines of frequency space; density compensation uses the product
// quadrature sigma^2 dsigma * dphi * lambda_k / 2; Kaiser-Bessel spreading
// onto the oversampled lattice, inverse 3D FFT, deapodization.
VolumeGrid radon3d_inverse(const PlaneSinogram& sino, const CartesianGrid& grid,
                           const Radon3dOptions& opt = {});

// Alternative route kept for cross-validation: second s-derivative per
// profile (spectral), then spherical backprojection with the same quadrature
// weights. O(N^3 nphi npsi); use at small scale.
VolumeGrid radon3d_inverse_fbp(const PlaneSinogram& sino, const CartesianGrid& grid,
                               int radial_len = 0);

}  // namespace wrtkit
