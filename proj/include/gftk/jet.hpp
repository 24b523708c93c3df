#ifndef GFTK_JET_HPP
#define GFTK_JET_HPP

#include <cmath>
#include <complex>

#include "gftk/errors.hpp"

namespace gftk {

using cplx = std::complex<double>;

inline constexpr double kZeroValueFloor = 1e-300;

// Value and first three derivatives of an analytic function at a point.
// Arithmetic follows the Leibniz / Faa di Bruno rules through order 3.
struct Jet3 {
    cplx f0{}, f1{}, f2{}, f3{};

    static Jet3 variable(cplx z) { return {z, 1.0, 0.0, 0.0}; }
    static Jet3 constant(cplx c) { return {c, 0.0, 0.0, 0.0}; }
};

inline Jet3 operator+(const Jet3& a, const Jet3& b) {
    return {a.f0 + b.f0, a.f1 + b.f1, a.f2 + b.f2, a.f3 + b.f3};
}
inline Jet3 operator-(const Jet3& a, const Jet3& b) {
    return {a.f0 - b.f0, a.f1 - b.f1, a.f2 - b.f2, a.f3 - b.f3};
}
inline Jet3 operator-(const Jet3& a) { return {-a.f0, -a.f1, -a.f2, -a.f3}; }
inline Jet3 operator*(cplx c, const Jet3& a) { return {c * a.f0, c * a.f1, c * a.f2, c * a.f3}; }
inline Jet3 operator*(const Jet3& a, cplx c) { return c * a; }

inline Jet3 jet_mul(const Jet3& a, const Jet3& b) {
    return {a.f0 * b.f0,
            a.f1 * b.f0 + a.f0 * b.f1,
            a.f2 * b.f0 + 2.0 * a.f1 * b.f1 + a.f0 * b.f2,
            a.f3 * b.f0 + 3.0 * a.f2 * b.f1 + 3.0 * a.f1 * b.f2 + a.f0 * b.f3};
}
inline Jet3 operator*(const Jet3& a, const Jet3& b) { return jet_mul(a, b); }

// h(a): outer scalar derivatives h0..h3 evaluated at a.f0, composed with the inner jet.
inline Jet3 jet_compose(cplx h0, cplx h1, cplx h2, cplx h3, const Jet3& a) {
    const cplx b1 = a.f1, b2 = a.f2, b3 = a.f3;
    return {h0,
            h1 * b1,
            h2 * b1 * b1 + h1 * b2,
            h3 * b1 * b1 * b1 + 3.0 * h2 * b1 * b2 + h1 * b3};
}

inline Jet3 jet_inv(const Jet3& a) {
    if (std::abs(a.f0) < kZeroValueFloor) throw ZeroValue("ZeroValue: reciprocal of (near-)zero jet value");
    const cplx w = a.f0, iw = 1.0 / w;
    return jet_compose(iw, -iw * iw, 2.0 * iw * iw * iw, -6.0 * iw * iw * iw * iw, a);
}
inline Jet3 jet_div(const Jet3& a, const Jet3& b) { return jet_mul(a, jet_inv(b)); }
inline Jet3 operator/(const Jet3& a, const Jet3& b) { return jet_div(a, b); }

inline Jet3 jet_exp(const Jet3& a) {
    const cplx e = std::exp(a.f0);
    return jet_compose(e, e, e, e, a);
}

// Principal branch for the value channel; derivative channels are branch independent.
inline Jet3 jet_log(const Jet3& a) {
    if (std::abs(a.f0) < kZeroValueFloor) throw ZeroValue();
    const cplx w = a.f0, iw = 1.0 / w;
    return jet_compose(std::log(w), iw, -iw * iw, 2.0 * iw * iw * iw, a);
}

// exp(alpha * (Log a + 2*pi*i*log_offset)); log_offset carries branch continuation
// chosen by path-tracking callers.
inline Jet3 jet_pow(const Jet3& a, cplx alpha, int log_offset = 0) {
    if (alpha == cplx(0.0)) return Jet3::constant(1.0);
    if (alpha == cplx(1.0) && log_offset == 0) return a;
    Jet3 l = jet_log(a);
    l.f0 += cplx(0.0, 2.0 * M_PI * log_offset);
    return jet_exp(alpha * l);
}

inline Jet3 jet_sqrt(const Jet3& a) { return jet_pow(a, 0.5); }

} // namespace gftk

#endif
