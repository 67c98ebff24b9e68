#pragma once

#include <functional>

#include "wrtkit/sinogram.hpp"
#include "wrtkit/volume.hpp"

namespace wrtkit {

// Divergent beam transform Da(x, theta): integral of `a` along the half-line
// x + t*theta, t >= 0, truncated at the analytic exit from the support ball.
// Uniform nodes of spacing `step` anchored at x, plus the partial end segment.
double divergent_beam(const VolumeGrid& a, const Vec3& x, const Vec3& theta, double step);

// Weight W(x, theta) of the transport model: 1, exp(-Da), or an arbitrary
// callable (test weights). The attenuated evaluator owns its map.
class WeightEvaluator {
  public:
    using Fn = std::function<double(const Vec3&, const Vec3&)>;

    static WeightEvaluator uniform() { return WeightEvaluator(); }
    static WeightEvaluator attenuated(VolumeGrid a, double step = 0.0) {
        WeightEvaluator w;
        w.kind_ = Kind::attenuated;
        w.step_ = step > 0 ? step : a.grid.dx();
        w.atten_ = std::move(a);
        return w;
    }
    static WeightEvaluator generic(Fn fn) {
        WeightEvaluator w;
        w.kind_ = Kind::generic;
        w.fn_ = std::move(fn);
        return w;
    }

    bool is_uniform() const { return kind_ == Kind::uniform; }
    bool is_attenuated() const { return kind_ == Kind::attenuated; }
    const VolumeGrid& attenuation() const { return atten_; }
    double da_step() const { return step_; }

    double operator()(const Vec3& x, const Vec3& theta) const {
        switch (kind_) {
            case Kind::uniform: return 1.0;
            case Kind::attenuated: return std::exp(-divergent_beam(atten_, x, theta, step_));
            default: return fn_(x, theta);
        }
    }

  private:
    enum class Kind { uniform, attenuated, generic };
    WeightEvaluator() = default;
    Kind kind_ = Kind::uniform;
    VolumeGrid atten_;
    double step_ = 0.0;
    Fn fn_;
};

// Weighted ray transform of one ray gamma(z, s, phi): trapezoid of W*f with
// step <= `step` over t in [-sqrt(R^2-s^2), sqrt(R^2-s^2)]; 0 when |s| >= R.
// For the attenuated weight Da is accumulated along the ray (suffix sums on
// the shared quadrature lattice), which matches the per-node definition
// exactly while the attenuation support stays inside the ball.
double ray_transform(const VolumeGrid& f, const WeightEvaluator& w, double z, double s, double phi,
                     double step = 0.0);

// Reference path: W evaluated by an independent divergent_beam call at every
// quadrature node. Slow; used to guard the accumulated path.
double ray_transform_reference(const VolumeGrid& f, const WeightEvaluator& w, double z, double s,
                               double phi, double step = 0.0);

// Applies ray_transform over the whole grid. Deterministic and independent of
// the number of threads.
RaySinogram project_all(const VolumeGrid& f, const WeightEvaluator& w, const RayGrid& grid);

// Weighted plane transform over the plane (s, theta(phi, psi)): 2D tensor
// trapezoid on an orthonormal in-plane frame, truncated to the support disk.
// Test oracle for the reduction; not used in the production pipeline.
double plane_transform_direct(const VolumeGrid& f, const WeightEvaluator& w, double s, double phi,
                              double psi, double step = 0.0);

}  // namespace wrtkit
