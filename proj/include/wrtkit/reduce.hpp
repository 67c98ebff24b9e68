#pragma once

#include "wrtkit/forward.hpp"
#include "wrtkit/sinogram.hpp"

namespace wrtkit {

// Interpolation scheme of the rebinning step. The tau quadrature is the
// trapezoid rule with step ds; ray values off the grid are rebuilt by a
// natural cubic spline along s at the three z-levels surrounding the target,
// followed by quadratic interpolation in z (stencil clamped at the slab
// ends). Samples requested outside [-R, R] in s or z contribute 0.
struct ReductionConfig {
    bool spline_sigma = true;  // false: linear in sigma (diagnostics only)
};

// Rebins ray data on Gamma into plane data on Pi: for each plane
// (s, theta(phi, psi)) the ray values at z = s cos psi + tau sin psi,
// sigma = s sin psi - tau cos psi are integrated over the in-plane offset
// tau. Requires the two grids to share ns, nphi and R.
PlaneSinogram reduce(const RaySinogram& rays, const PlaneGrid& grid, const ReductionConfig& cfg = {});

// Reduced weight: the original weight at the in-plane direction,
// w(x, theta(phi, psi)) = W(x, theta(phi + pi/2, pi/2)); independent of psi.
double reduce_weight(const WeightEvaluator& w, const Vec3& x, double phi, double psi = kPi / 2);

// Zeroth harmonic of the reduced weight: spherical average over the Pi
// direction quadrature; equals the circular average because the reduced
// weight does not depend on psi.
double reduced_w0_sphere(const WeightEvaluator& w, const Vec3& x, const PlaneGrid& pg);
double reduced_w0(const WeightEvaluator& w, const Vec3& x, int nphi);

}  // namespace wrtkit
