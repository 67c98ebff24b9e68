#pragma once

#include "wrtkit/chang.hpp"

namespace wrtkit {

// Settings of the fixed-point solver for (I + Q)(w0 f_m) = R^{-1} R_W f.
// m is the approximation order: m = 0 is exactly the Chang method, each
// increment treats one more angular-harmonic pair of the weight exactly.
// The domain D (centered ball) must surround the activity support.
struct KunyanskyConfig {
    int m = 1;
    int max_iter = 50;
    double tol = 1e-6;
    double domain_radius = 0.90;
};

// Per-iteration convergence log: update norms ||u_{j+1} - u_j|| and their
// successive ratios.
struct SolveLog {
    double sigma = 0.0;
    std::vector<double> update_norms;
    std::vector<double> ratios;
    int iterations = 0;
};

// Upper bound sigma on ||Q|| from the angular harmonics of the weight.
// Only even orders enter: classical inversion of full-circle data
// annihilates odd-in-orientation components, so order 2q is the q-th
// effective harmonic pair and order 2m the last one treated at level m.
// d = 2: sum over even 0 < k <= 2m of 2 sup_D |c_k(x)| / w0(x) on the slice;
// d = 3: the same sum with each term multiplied by the sup of the
// degree-(2m) spherical truncation kernel of exp(i k phi).
double sigma_bound_2d(const WeightFields& wf, int iz, double domain_radius, int m);
double sigma_bound_3d(const WeightFields& wf, double domain_radius, int m);

// Degree-<=J least-squares truncation on the sphere of the psi-independent
// factor exp(i l phi), evaluated at the given cos(psi) values.
std::vector<double> psi_truncation_kernel(int l, int J, const std::vector<double>& t_values);

// Q applied to an image/volume supported in D:
// Q v = R^{-1} R_V (v / w0) restricted to D, where V is the part of the
// weight with harmonic orders 1..2m (even orders only; odd ones invert to
// zero). Identically zero for m = 0 or direction-independent weights.
SliceImage apply_q_2d(const SliceImage& v, const WeightFields& wf, int iz, const KunyanskyConfig& cfg,
                      int ns, int nphi);
VolumeGrid apply_q_3d(const VolumeGrid& v, const WeightFields& wf, const KunyanskyConfig& cfg,
                      const PlaneGrid& pg, const Radon3dOptions& opt = {});

// Successive approximations u <- g - Q u with g = R^{-1}(data) on D;
// refuses when sigma >= 1; returns u / w0 on D, 0 outside.
SliceImage kunyansky2d(const SliceSinogram& sino, const WeightFields& wf, int iz,
                       const KunyanskyConfig& cfg, SolveLog* log = nullptr);
VolumeGrid kunyansky3d(const PlaneSinogram& sino, const WeightFields& wf, const KunyanskyConfig& cfg,
                       const Radon3dOptions& data_opt = {},
                       const Radon3dOptions& q_opt = {1.25, 2, 0}, SolveLog* log = nullptr);

// Slice-by-slice 2D solve of ray data, stacked.
VolumeGrid kunyansky_stack(const RaySinogram& rays, const WeightFields& wf, const KunyanskyConfig& cfg,
                           SolveLog* log = nullptr);

}  // namespace wrtkit
