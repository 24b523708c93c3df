#ifndef GFTK_POWER_SERIES_HPP
#define GFTK_POWER_SERIES_HPP

#include <vector>

#include "gftk/jet.hpp"

namespace gftk {

// Truncated Taylor series sum c[n] z^n, n = 0..order. Exact algebra carrier up to
// truncation; numerical evaluation is trusted for |z| <= 0.9 only (boundary-slow
// convergence of log(1-z)-type series) -- use jets or closed forms beyond that.
struct PowerSeries {
    std::vector<cplx> c; // size = order + 1

    PowerSeries() : c(1, cplx(0.0)) {}
    explicit PowerSeries(int order) : c(static_cast<std::size_t>(order) + 1, cplx(0.0)) {}
    explicit PowerSeries(std::vector<cplx> coeffs) : c(std::move(coeffs)) {}

    int order() const { return static_cast<int>(c.size()) - 1; }
    cplx coeff(int n) const { return (n >= 0 && n <= order()) ? c[static_cast<std::size_t>(n)] : cplx(0.0); }

    static PowerSeries constant(cplx v, int order);
    static PowerSeries identity(int order); // z
};

inline constexpr int kDefaultTruncation = 256;

PowerSeries series_truncate(const PowerSeries& s, int order);
PowerSeries series_add(const PowerSeries& a, const PowerSeries& b);
PowerSeries series_sub(const PowerSeries& a, const PowerSeries& b);
PowerSeries series_scale(cplx k, const PowerSeries& a);
PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b);
PowerSeries series_div(const PowerSeries& a, const PowerSeries& b); // b.c0 != 0
PowerSeries series_derive(const PowerSeries& s);                    // order N-1
PowerSeries series_integrate(const PowerSeries& s);                 // order N+1, c0 = 0
PowerSeries series_shift_div_z(const PowerSeries& s);               // s/z, needs c0 = 0

// log/pow require c0 = 1 (the normalized setting); exp takes any c0.
PowerSeries series_log(const PowerSeries& s);
PowerSeries series_exp(const PowerSeries& s);
PowerSeries series_pow(const PowerSeries& s, cplx alpha);

// General-base variants factor out c0 on the principal branch (used by the
// expression evaluator, where bases are not normalized).
PowerSeries series_log_general(const PowerSeries& s);
PowerSeries series_pow_general(const PowerSeries& s, cplx alpha);

cplx series_eval(const PowerSeries& s, cplx z);
Jet3 series_jet(const PowerSeries& s, cplx z);

double series_max_coeff_dist(const PowerSeries& a, const PowerSeries& b);

} // namespace gftk

#endif
