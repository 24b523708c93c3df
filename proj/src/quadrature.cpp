#include "gftk/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "gftk/errors.hpp"

namespace gftk {

namespace {

GaussLegendre compute_gl(int n) {
    GaussLegendre gl;
    gl.x.resize(n);
    gl.w.resize(n);
    for (int k = 0; k < n; ++k) {
        double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        gl.x[n - 1 - k] = x;
        gl.w[n - 1 - k] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return gl;
}

} // namespace

const GaussLegendre& GaussLegendre::get(int n) {
    static std::map<int, GaussLegendre> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gl(n)).first;
    return it->second;
}

cplx integrate_segment(const std::function<cplx(cplx)>& g, cplx a, cplx b,
                       int panels, int gl_points) {
    const GaussLegendre& gl = GaussLegendre::get(gl_points);
    cplx acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const cplx pa = a + (b - a) * (double(p) / panels);
        const cplx pb = a + (b - a) * (double(p + 1) / panels);
        const cplx mid = 0.5 * (pa + pb), half = 0.5 * (pb - pa);
        cplx s = 0.0;
        for (int k = 0; k < gl_points; ++k) s += gl.w[k] * g(mid + half * gl.x[k]);
        acc += half * s;
    }
    return acc;
}

bool LogTracker::step(cplx w, cplx* log_out) {
    if (!started_) throw EvalError("LogTracker used before seeding");
    if (std::abs(w) < kZeroValueFloor) throw DomainError("integrand vanished on the path");
    const cplx ratio = w / w_;
    // right-half-plane ratio keeps the principal log of the ratio unambiguous
    if (ratio.real() <= 0.0 || std::abs(ratio - 1.0) > 1.75) return false;
    log_ += std::log(ratio);
    w_ = w;
    if (log_out) *log_out = log_;
    return true;
}

namespace {

struct PowerWalk {
    const std::function<cplx(cplx)>& g;
    cplx alpha;
    const GaussLegendre& gl;
    int depth_cap;
    LogTracker tracker;
    bool want_integral;
    cplx integral = 0.0;

    // walks nodes of [a,b]; subdivides on tracking failure
    void process(cplx a, cplx b, int depth) {
        const LogTracker saved = tracker;
        const cplx mid = 0.5 * (a + b), half = 0.5 * (b - a);
        cplx s = 0.0;
        bool ok = true;
        for (std::size_t k = 0; k < gl.x.size(); ++k) {
            const cplx u = mid + half * gl.x[k];
            cplx lg;
            if (!tracker.step(g(u), &lg)) {
                ok = false;
                break;
            }
            if (want_integral) s += gl.w[k] * std::exp(alpha * lg);
        }
        if (ok) {
            // close the panel at its right endpoint to keep the walk gap-free
            if (!tracker.step(g(b), nullptr)) ok = false;
        }
        if (ok) {
            integral += half * s;
            return;
        }
        if (depth >= depth_cap)
            throw BranchTrackingFailure("log jump above pi/2 persists at subdivision depth cap");
        tracker = saved;
        process(a, mid, depth + 1);
        process(mid, b, depth + 1);
    }
};

cplx run_power_walk(const std::function<cplx(cplx)>& g, cplx z, cplx alpha,
                    const PowerIntegralOptions& opt, bool want_integral, cplx* final_log) {
    if (std::abs(z) == 0.0) {
        if (final_log) *final_log = 0.0;
        return 0.0;
    }
    PowerWalk walk{g, alpha, GaussLegendre::get(opt.gl_points), opt.depth_cap, {}, want_integral};
    // the transforms normalize their integrands to 1 at u = 0, so the walk
    // starts from log = 0 exactly
    walk.tracker.seed(1.0, 0.0);
    for (int p = 0; p < opt.initial_panels; ++p) {
        const cplx a = z * (double(p) / opt.initial_panels);
        const cplx b = z * (double(p + 1) / opt.initial_panels);
        walk.process(a, b, 0);
    }
    if (final_log) *final_log = walk.tracker.current_log();
    return walk.integral;
}

} // namespace

cplx integrate_power_radial(const std::function<cplx(cplx)>& g, cplx z, cplx alpha,
                            const PowerIntegralOptions& opt) {
    return run_power_walk(g, z, alpha, opt, true, nullptr);
}

cplx tracked_log_radial(const std::function<cplx(cplx)>& g, cplx z,
                        const PowerIntegralOptions& opt) {
    cplx lg = 0.0;
    run_power_walk(g, z, cplx(0.0), opt, false, &lg);
    return lg;
}

} // namespace gftk
