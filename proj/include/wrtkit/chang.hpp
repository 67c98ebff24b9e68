#pragma once

#include "wrtkit/radon2d.hpp"
#include "wrtkit/radon3d.hpp"
#include "wrtkit/reduce.hpp"
#include "wrtkit/weights.hpp"

namespace wrtkit {

inline constexpr double kW0Epsilon = 1e-6;     // division guard
inline constexpr double kDefaultMaskRadius = 0.95;  // fraction of R

// Circular average of the weight over the in-slice directions,
// (1/nphi) sum_j W(x, theta(phi_j, pi/2)). Direct evaluation; production
// pipelines use the sweep-accelerated WeightFields instead.
SliceImage w0_2d(const WeightEvaluator& w, double z, const CartesianGrid& grid, int nphi);

// Spherical average of the reduced weight over the Pi direction quadrature
// (weights dphi * lambda_k / 4pi). Direct evaluation.
VolumeGrid w0_3d_direct(const WeightEvaluator& w, const CartesianGrid& grid, const PlaneGrid& pg);

// Chang-type 2D inversion of one slice: classical FBP divided by w0 inside
// the mask disk, 0 outside. w0 <= eps inside the mask is an error.
SliceImage chang2d(const SliceSinogram& sino, const SliceImage& w0, double mask_radius);

// Chang-type 3D inversion of reduced plane data.
VolumeGrid chang3d(const PlaneSinogram& sino, const WeightFields& wf, double mask_radius,
                   const Radon3dOptions& opt = {});

// Slice-by-slice Chang reconstruction of ray data: chang2d on every z-level,
// stacked. Requires the sinogram z-levels to match the volume grid.
VolumeGrid slice_stack(const RaySinogram& rays, const WeightFields& wf, double mask_radius);

// mask helper: in-slice disk radius^2 of the ball mask at height z
inline double mask_disk_radius2(double mask_radius, double z) {
    return mask_radius * mask_radius - z * z;
}

}  // namespace wrtkit
