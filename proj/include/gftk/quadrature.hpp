#ifndef GFTK_QUADRATURE_HPP
#define GFTK_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "gftk/jet.hpp"

namespace gftk {

// Gauss-Legendre nodes/weights on [-1, 1], computed once per order by Newton
// iteration on the Legendre recurrence.
struct GaussLegendre {
    std::vector<double> x, w;
    static const GaussLegendre& get(int n);
};

// plain panelled quadrature of g along the segment [a, b]
cplx integrate_segment(const std::function<cplx(cplx)>& g, cplx a, cplx b,
                       int panels = 8, int gl_points = 32);

// Continuous-log walker: unwraps log g along an ordered sequence of samples.
// Each step requires the ratio to the previous sample to stay in the right
// half plane (|arg jump| < pi/2); callers subdivide when step() reports false.
class LogTracker {
  public:
    bool started() const { return started_; }
    cplx current_log() const { return log_; }
    cplx current_value() const { return w_; }

    // seeds the walk: continuous log at the first sample is the principal log
    void seed(cplx w, cplx log_of_w) {
        w_ = w;
        log_ = log_of_w;
        started_ = true;
    }
    // returns false if the jump is too large to unwrap safely
    bool step(cplx w, cplx* log_out);

  private:
    cplx w_{1.0}, log_{0.0};
    bool started_ = false;
};

// Integral of g(u)^alpha du along [0, z] with the branch of log g tracked
// continuously from log g(0) = 0 (the normalization used by the transforms).
// Panels subdivide adaptively when the tracked log jumps too fast; exceeding
// depth_cap raises BranchTrackingFailure.
struct PowerIntegralOptions {
    int initial_panels = 8;
    int gl_points = 32;
    int depth_cap = 12;
};
cplx integrate_power_radial(const std::function<cplx(cplx)>& g, cplx z, cplx alpha,
                            const PowerIntegralOptions& opt = {});

// Continuous log of g along [0, z] (same tracking rules), with log g(0) = 0.
cplx tracked_log_radial(const std::function<cplx(cplx)>& g, cplx z,
                        const PowerIntegralOptions& opt = {});

} // namespace gftk

#endif
