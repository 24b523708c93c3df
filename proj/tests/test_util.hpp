#ifndef GFTK_TEST_UTIL_HPP
#define GFTK_TEST_UTIL_HPP

#include <complex>
#include <random>

#include <doctest.h>

#include "gftk/jet.hpp"

namespace gftk_test {

using gftk::cplx;

inline void check_close(cplx got, cplx want, double tol, const char* what = "") {
    INFO(what, " got ", got.real(), "+", got.imag(), "i want ", want.real(), "+", want.imag(), "i");
    CHECK(std::abs(got - want) <= tol);
}

inline void check_rel(cplx got, cplx want, double rel, const char* what = "") {
    INFO(what, " got ", got.real(), "+", got.imag(), "i want ", want.real(), "+", want.imag(), "i");
    CHECK(std::abs(got - want) <= rel * (1.0 + std::abs(want)));
}

inline void check_jet(const gftk::Jet3& got, const gftk::Jet3& want, double tol) {
    check_close(got.f0, want.f0, tol, "f0");
    check_close(got.f1, want.f1, tol, "f1");
    check_close(got.f2, want.f2, tol, "f2");
    check_close(got.f3, want.f3, tol, "f3");
}

// deterministic point samples in the disk of radius r_max
inline std::vector<cplx> random_disk_points(unsigned seed, int n, double r_max) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ur(0.0, 1.0);
    std::vector<cplx> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i)
        pts.push_back(std::polar(r_max * std::sqrt(ur(rng)), 2.0 * M_PI * ur(rng)));
    return pts;
}

} // namespace gftk_test

#endif
