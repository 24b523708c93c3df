#include "gftk/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gftk/errors.hpp"
#include "gftk/json_writer.hpp"

namespace gftk {

namespace {

constexpr double kInfinityTrigger = 1e12;

double weight(double r, int p) {
    const double w = 1.0 - r * r;
    return p == 1 ? w : w * w;
}

struct Sample {
    double value = -1.0;
    double r = 0.0, theta = 0.0;
    bool valid = false;
};

// deterministic tie-break: larger value, then smaller r, then smaller theta
bool better(const Sample& a, const Sample& b) {
    if (!b.valid) return a.valid;
    if (!a.valid) return false;
    if (a.value != b.value) return a.value > b.value;
    if (a.r != b.r) return a.r < b.r;
    return a.theta < b.theta;
}

} // namespace

bool NormResult::infinite() const { return std::isinf(value); }

cplx pre_schwarzian(const Func& f, cplx z) {
    const Jet3 j = f.jet(z);
    if (std::abs(j.f1) < 1e-14) throw CriticalPoint();
    return j.f2 / j.f1;
}

cplx schwarzian(const Func& f, cplx z) {
    const Jet3 j = f.jet(z);
    if (std::abs(j.f1) < 1e-14) throw CriticalPoint();
    const cplx t = j.f2 / j.f1;
    return j.f3 / j.f1 - 1.5 * t * t;
}

NormResult norm_search(const NormTarget& target, const NormOptions& opts) {
    NormResult out;
    out.grid = opts;

    const int nr = opts.n_radial, na = opts.n_angular;
    std::vector<double> radii(nr);
    for (int i = 0; i < nr; ++i)
        radii[i] = opts.r_max * std::sin(M_PI * (i + 1) / (2.0 * (nr + 1)));

    auto weighted = [&](double r, double theta) -> double {
        const cplx z = std::polar(r, theta);
        return weight(r, target.weight_power) * std::abs(target.field(z));
    };

    Sample best;
    long evals_ok = 0;
    for (int jj = 0; jj < na; ++jj) {
        const double theta = 2.0 * M_PI * jj / na;
        if (target.begin_ray) target.begin_ray(theta, radii);
        for (int i = 0; i < nr; ++i) {
            Sample s;
            s.r = radii[i];
            s.theta = theta;
            try {
                s.value = weighted(s.r, theta);
                s.valid = true;
                ++evals_ok;
            } catch (const EvalError&) {
                ++out.skipped_points;
                continue;
            }
            if (better(s, best)) best = s;
        }
    }
    if (evals_ok == 0) throw AllPointsSingular();

    // compass-search refinement around the grid argmax: per-coordinate steps
    // expand on success and shrink only when stuck, so narrow curved ridges
    // near r_max are still climbed
    auto safe_weighted = [&](double r, double theta) -> double {
        if (target.begin_ray) target.begin_ray(theta, {r});
        try {
            return weighted(r, theta);
        } catch (const EvalError&) {
            return -1.0;
        }
    };

    double r = best.r, th = best.theta;
    double v = best.value;
    const double dr0 = opts.r_max / (nr + 1);
    const double dth0 = 2.0 * M_PI / na;
    double step_r = dr0, step_th = dth0;
    for (int it = 0; it < opts.refine_iters; ++it) {
        bool moved_r = false;
        for (double s : {step_r, -step_r}) {
            const double cand = std::clamp(r + s, 1e-9, opts.r_max);
            const double fv = safe_weighted(cand, th);
            if (fv > v) {
                v = fv;
                r = cand;
                moved_r = true;
            }
        }
        step_r = moved_r ? std::min(1.6 * step_r, dr0) : 0.5 * step_r;

        bool moved_th = false;
        for (double s : {step_th, -step_th}) {
            const double cand = th + s;
            const double fv = safe_weighted(r, cand);
            if (fv > v) {
                v = fv;
                th = cand;
                moved_th = true;
            }
        }
        step_th = moved_th ? std::min(1.6 * step_th, dth0) : 0.5 * step_th;

        if (v > kInfinityTrigger) break;
        if (step_r < 1e-15 && step_th < 1e-15) break;
    }

    out.refined = opts.refine_iters > 0;
    out.argmax = std::polar(r, th);
    out.value = v;
    if (v > kInfinityTrigger) {
        out.value = std::numeric_limits<double>::infinity();
    } else if (target.begin_ray) {
        // leave value self-consistent with a fresh evaluation at argmax
        out.value = safe_weighted(r, th);
        if (out.value < 0.0) out.value = v;
    }
    return out;
}

namespace {

NormTarget make_target(const DerivativeField& df) {
    NormTarget t;
    t.weight_power = (df.kind == FieldKind::PreSchwarzian) ? 1 : 2;
    if (df.transform) {
        auto tf = std::make_shared<TransformedField>(
            TransformedField{*df.transform, Func::compile(df.f), df.alpha});
        if (df.kind == FieldKind::PreSchwarzian)
            t.field = [tf](cplx z) { return tf->pre_schwarzian(z); };
        else
            t.field = [tf](cplx z) { return tf->schwarzian(z); };
    } else {
        auto fn = std::make_shared<Func>(Func::compile(df.f));
        if (df.kind == FieldKind::PreSchwarzian)
            t.field = [fn](cplx z) { return pre_schwarzian(*fn, z); };
        else
            t.field = [fn](cplx z) { return schwarzian(*fn, z); };
    }
    return t;
}

} // namespace

NormResult norm(const DerivativeField& df, const NormOptions& opts) {
    return norm_search(make_target(df), opts);
}

std::pair<double, double> norm_scaling_check(const FunctionSpec& f, cplx alpha,
                                             const NormOptions& opts) {
    DerivativeField lhs{f, FieldKind::PreSchwarzian, TransformOp::JAlpha, alpha};
    DerivativeField rhs{f, FieldKind::PreSchwarzian, TransformOp::Alexander, 1.0};
    return {norm(lhs, opts).value, std::abs(alpha) * norm(rhs, opts).value};
}

std::string norm_result_to_json(const NormResult& r) {
    JsonWriter w;
    w.begin_object();
    if (r.infinite())
        w.key("value").null_value().key("infinite").boolean(true);
    else
        w.key("value").number(r.value).key("infinite").boolean(false);
    w.key("argmax").complex_pair(r.argmax);
    w.key("grid").begin_object()
        .key("n_radial").number(r.grid.n_radial)
        .key("n_angular").number(r.grid.n_angular)
        .key("r_max").number(r.grid.r_max)
        .key("refine_iters").number(r.grid.refine_iters)
        .end_object();
    w.key("refined").boolean(r.refined);
    w.key("skipped_points").number(double(r.skipped_points));
    w.end_object();
    return w.str();
}

} // namespace gftk
