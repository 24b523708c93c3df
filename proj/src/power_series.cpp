#include "gftk/power_series.hpp"

#include <algorithm>
#include <cmath>

#include "gftk/errors.hpp"

namespace gftk {

namespace {
constexpr double kNormTol = 1e-12;
}

PowerSeries PowerSeries::constant(cplx v, int order) {
    PowerSeries s(order);
    s.c[0] = v;
    return s;
}

PowerSeries PowerSeries::identity(int order) {
    PowerSeries s(order);
    if (order >= 1) s.c[1] = 1.0;
    return s;
}

PowerSeries series_truncate(const PowerSeries& s, int order) {
    PowerSeries r(order);
    const int m = std::min(order, s.order());
    for (int n = 0; n <= m; ++n) r.c[n] = s.c[n];
    return r;
}

PowerSeries series_add(const PowerSeries& a, const PowerSeries& b) {
    const int N = std::min(a.order(), b.order());
    PowerSeries r(N);
    for (int n = 0; n <= N; ++n) r.c[n] = a.c[n] + b.c[n];
    return r;
}

PowerSeries series_sub(const PowerSeries& a, const PowerSeries& b) {
    const int N = std::min(a.order(), b.order());
    PowerSeries r(N);
    for (int n = 0; n <= N; ++n) r.c[n] = a.c[n] - b.c[n];
    return r;
}

PowerSeries series_scale(cplx k, const PowerSeries& a) {
    PowerSeries r = a;
    for (auto& v : r.c) v *= k;
    return r;
}

PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b) {
    const int N = std::min(a.order(), b.order());
    PowerSeries r(N);
    for (int n = 0; n <= N; ++n) {
        cplx s = 0.0;
        for (int k = 0; k <= n; ++k) s += a.c[k] * b.c[n - k];
        r.c[n] = s;
    }
    return r;
}

PowerSeries series_div(const PowerSeries& a, const PowerSeries& b) {
    if (std::abs(b.c[0]) < kZeroValueFloor) throw DivisorConstantZero();
    const int N = std::min(a.order(), b.order());
    PowerSeries q(N);
    for (int n = 0; n <= N; ++n) {
        cplx s = a.c[n];
        for (int k = 1; k <= n; ++k) s -= b.c[k] * q.c[n - k];
        q.c[n] = s / b.c[0];
    }
    return q;
}

PowerSeries series_derive(const PowerSeries& s) {
    const int N = s.order();
    if (N < 1) throw EvalError("series_derive: need order >= 1");
    PowerSeries r(N - 1);
    for (int n = 0; n < N; ++n) r.c[n] = double(n + 1) * s.c[n + 1];
    return r;
}

PowerSeries series_integrate(const PowerSeries& s) {
    const int N = s.order();
    PowerSeries r(N + 1);
    r.c[0] = 0.0; // matches the int_0^z normalization of J_alpha, I_alpha
    for (int n = 0; n <= N; ++n) r.c[n + 1] = s.c[n] / double(n + 1);
    return r;
}

PowerSeries series_shift_div_z(const PowerSeries& s) {
    if (std::abs(s.c[0]) > kNormTol) throw NonzeroConstantTerm();
    const int N = s.order();
    if (N < 1) throw EvalError("series_shift_div_z: need order >= 1");
    PowerSeries r(N - 1);
    for (int n = 0; n < N; ++n) r.c[n] = s.c[n + 1];
    return r;
}

PowerSeries series_log(const PowerSeries& s) {
    if (std::abs(s.c[0] - 1.0) > kNormTol) throw NotNormalized("NotNormalized: series_log needs c0 = 1");
    // L' = s'/s integrated termwise, L(0) = 0.
    const int N = s.order();
    if (N < 1) return PowerSeries(0);
    return series_integrate(series_div(series_derive(s), series_truncate(s, N - 1)));
}

PowerSeries series_exp(const PowerSeries& s) {
    // E' = s' E  =>  n E_n = sum_{k=1..n} k s_k E_{n-k}
    const int N = s.order();
    PowerSeries e(N);
    e.c[0] = std::exp(s.c[0]);
    for (int n = 1; n <= N; ++n) {
        cplx acc = 0.0;
        for (int k = 1; k <= n; ++k) acc += double(k) * s.c[k] * e.c[n - k];
        e.c[n] = acc / double(n);
    }
    return e;
}

PowerSeries series_pow(const PowerSeries& s, cplx alpha) {
    if (std::abs(s.c[0] - 1.0) > kNormTol) throw NotNormalized("NotNormalized: series_pow needs c0 = 1");
    return series_exp(series_scale(alpha, series_log(series_truncate(s, s.order()))));
}

PowerSeries series_log_general(const PowerSeries& s) {
    const cplx c0 = s.c[0];
    if (std::abs(c0) < kZeroValueFloor) throw ZeroValue("ZeroValue: series_log_general needs c0 != 0");
    PowerSeries u = series_scale(1.0 / c0, s);
    u.c[0] = 1.0;
    PowerSeries l = series_log(u);
    l.c[0] += std::log(c0);
    return l;
}

PowerSeries series_pow_general(const PowerSeries& s, cplx alpha) {
    if (alpha == cplx(0.0)) return PowerSeries::constant(1.0, s.order());
    return series_exp(series_scale(alpha, series_log_general(s)));
}

cplx series_eval(const PowerSeries& s, cplx z) {
    cplx acc = 0.0;
    for (int n = s.order(); n >= 0; --n) acc = acc * z + s.c[n];
    return acc;
}

Jet3 series_jet(const PowerSeries& s, cplx z) {
    Jet3 j{0.0, 0.0, 0.0, 0.0};
    for (int n = s.order(); n >= 0; --n) {
        // Horner on (value, f', f''/2!, f'''/3!) simultaneously
        j.f3 = j.f3 * z + j.f2;
        j.f2 = j.f2 * z + j.f1;
        j.f1 = j.f1 * z + j.f0;
        j.f0 = j.f0 * z + s.c[n];
    }
    j.f2 *= 2.0;
    j.f3 *= 6.0;
    return j;
}

double series_max_coeff_dist(const PowerSeries& a, const PowerSeries& b) {
    const int N = std::max(a.order(), b.order());
    double m = 0.0;
    for (int n = 0; n <= N; ++n) m = std::max(m, std::abs(a.coeff(n) - b.coeff(n)));
    return m;
}

} // namespace gftk
