#include "gftk/transforms.hpp"

#include <cmath>

#include "gftk/errors.hpp"

namespace gftk {

namespace {

void require_normalized(const PowerSeries& f) {
    if (f.order() < 1 || std::abs(f.coeff(0)) > 1e-12 || std::abs(f.coeff(1) - 1.0) > 1e-12)
        throw NotNormalized("NotNormalized: transform input needs f(0) = 0, f'(0) = 1");
}

} // namespace

PowerSeries j_alpha_series(const PowerSeries& f, cplx alpha, int N) {
    require_normalized(f);
    PowerSeries base = series_shift_div_z(series_truncate(f, N));
    return series_integrate(series_pow(base, alpha));
}

PowerSeries i_alpha_series(const PowerSeries& f, cplx alpha, int N) {
    require_normalized(f);
    PowerSeries d = series_derive(series_truncate(f, N));
    return series_integrate(series_pow(d, alpha));
}

PowerSeries alexander_series(const PowerSeries& f, int N) {
    return j_alpha_series(f, 1.0, N);
}

cplx transform_pointwise(TransformOp op, const Func& f, cplx alpha, cplx z,
                         const PowerIntegralOptions& opt) {
    if (std::abs(z) >= 1.0)
        throw DomainError("transform_pointwise needs |z| < 1");
    // the branch normalization pins the integrand to 1 at u = 0
    {
        const Jet3 j0 = f.jet(0.0);
        if (std::abs(j0.f0) > 1e-9 || std::abs(j0.f1 - 1.0) > 1e-9)
            throw NotNormalized("NotNormalized: transform input needs f(0) = 0, f'(0) = 1");
    }
    if (op == TransformOp::Alexander) alpha = 1.0;
    auto integrand = [&](cplx u) -> cplx {
        const Jet3 j = f.jet(u);
        if (op == TransformOp::IAlpha) return j.f1;
        if (std::abs(u) < 1e-12) return j.f1; // f(u)/u -> f'(0) at the origin
        return j.f0 / u;
    };
    return integrate_power_radial(integrand, z, alpha, opt);
}

cplx transform_pointwise(const TransformRequest& req, cplx z) {
    return transform_pointwise(req.op, Func::compile(req.f), req.alpha, z);
}

PowerSeries hr_dominant(const FunctionSpec& q, cplx gamma, int N) {
    if (gamma == cplx(0.0) || gamma.real() <= 0.0) throw BadGamma();
    PowerSeries qs = Func::compile(q).series(N);
    if (std::abs(qs.coeff(0) - 1.0) > 1e-12)
        throw NotNormalized("NotNormalized: hr_dominant needs q(0) = 1");
    PowerSeries r(N);
    for (int n = 0; n <= N; ++n) r.c[n] = gamma * qs.c[n] / (gamma + double(n));
    return r;
}

cplx TransformedField::pre_schwarzian(cplx z) const {
    const Jet3 j = f.jet(z);
    if (op == TransformOp::IAlpha) {
        if (std::abs(j.f1) < 1e-14) throw CriticalPoint();
        return alpha * (j.f2 / j.f1);
    }
    // J / Alexander: T_g = alpha (z f' - f)/(z f)
    const cplx a = (op == TransformOp::Alexander) ? cplx(1.0) : alpha;
    const cplx zf = z * j.f0;
    if (std::abs(zf) < 1e-280) throw DomainError("T_{J_alpha[f]} needs z != 0 and f(z) != 0");
    return a * (z * j.f1 - j.f0) / zf;
}

cplx TransformedField::schwarzian(cplx z) const {
    const Jet3 j = f.jet(z);
    if (op == TransformOp::IAlpha) {
        if (std::abs(j.f1) < 1e-14) throw CriticalPoint();
        const cplx t = j.f2 / j.f1;
        const cplx tp = j.f3 / j.f1 - t * t;
        return alpha * tp - 0.5 * (alpha * alpha) * (t * t);
    }
    const cplx a = (op == TransformOp::Alexander) ? cplx(1.0) : alpha;
    const cplx zf = z * j.f0;
    if (std::abs(zf) < 1e-280) throw DomainError("S_{J_alpha[f]} needs z != 0 and f(z) != 0");
    const cplx t = a * (z * j.f1 - j.f0) / zf;
    const cplx fz = j.f0 / z;
    // T' = alpha (f'' f - f'^2 + (f/z)^2) / f^2, cancellation-stable near 0
    const cplx tp = a * (j.f2 * j.f0 - j.f1 * j.f1 + fz * fz) / (j.f0 * j.f0);
    return tp - 0.5 * t * t;
}

} // namespace gftk
