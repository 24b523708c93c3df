#include <doctest.h>

#include <random>

#include "gftk/subordination.hpp"
#include "test_util.hpp"

using namespace gftk;
using gftk_test::check_close;

TEST_CASE("hull containment basics") {
    // unit circle samples
    RangeHull circle;
    for (int j = 0; j < 256; ++j) circle.boundary_samples.push_back(std::polar(1.0, 2.0 * M_PI * j / 256));
    circle = build_range_hull(FunctionSpec::expr("0+1*z"), 256, 1.0 - 1e-9);
    CHECK(hull_contains(circle, 0.0));
    CHECK(!hull_contains(circle, 2.0));
    CHECK(circle.convex_ok);

    RangeHull qh = build_range_hull(FunctionSpec::catalog("q-dominant"));
    Func q = Func::compile(FunctionSpec::catalog("q-dominant"));
    CHECK(hull_contains(qh, q.value(0.5)));
    CHECK(qh.convex_ok);
}

TEST_CASE("subordination_check examples") {
    // phi(z)/z is exactly the q-dominant: containment with matched center
    SubordinationResult a = subordination_check(FunctionSpec::expr("(-z-2*log(1-z))/z"),
                                                FunctionSpec::catalog("q-dominant"), 4000);
    CHECK(a.subordinate);
    CHECK(a.convex_ok);

    SubordinationResult b = subordination_check(FunctionSpec::expr("1+0*z"),
                                                FunctionSpec::catalog("q-dominant"), 500);
    CHECK(b.subordinate);

    // a constant far outside the (bounded) hull taken at r_max = 0.99
    RangeHull small = build_range_hull(FunctionSpec::catalog("q-dominant"), 2048, 0.99);
    CHECK(!hull_contains(small, 50.0));
}

TEST_CASE("make_R_member degenerate generators") {
    // b = 0: f' = 1, f = z
    RandomRMember zero = make_R_member({cplx(0.0, 0.0)}, 64);
    CHECK(std::abs(zero.f.coeff(1) - 1.0) < 1e-15);
    for (int n = 2; n <= 64; ++n) CHECK(std::abs(zero.f.coeff(n)) < 1e-15);

    // b = 1: f' = (1+z)/(1-z), f = phi
    RandomRMember one = make_R_member({cplx(1.0, 0.0)}, 64);
    PowerSeries phi = Func::compile(FunctionSpec::catalog("phi")).series(64);
    CHECK(series_max_coeff_dist(one.f, phi) < 1e-12);
}

TEST_CASE("random_R_member: membership by construction") {
    // seed 42, degree 6: Re f' > 0 on a dense grid via the exact rational form
    RandomRMember m = random_R_member_exact(42, 6);
    Func fp = Func::compile(m.fprime_expr);
    double min_re = 1e300;
    for (int j = 0; j < 100; ++j)
        for (int i = 0; i < 100; ++i) {
            const cplx z = std::polar(0.9999 * (i + 1) / 100.0, 2.0 * M_PI * j / 100.0);
            min_re = std::min(min_re, fp.value(z).real());
        }
    CHECK(min_re > 0.0);

    // the expression's value agrees with the series derivative inside the trust radius
    PowerSeries ds = series_derive(m.f);
    for (cplx z : gftk_test::random_disk_points(4, 12, 0.85))
        check_close(fp.value(z), series_eval(ds, z), 1e-9);

    // the public op returns the series carrier
    PowerSeries same = random_R_member(42, 6);
    CHECK(series_max_coeff_dist(same, m.f) == 0.0);
}

TEST_CASE("random members: Re f' > 0 on the 200x360 grid and f/z subordinate to q") {
    for (unsigned seed = 1; seed <= 50; ++seed) {
        RandomRMember m = random_R_member_exact(seed, 4 + int(seed % 5));
        Func fp = Func::compile(m.fprime_expr);
        double min_re = 1e300;
        for (int j = 0; j < 360; ++j)
            for (int i = 0; i < 200; ++i) {
                const cplx z = std::polar(0.9999 * (i + 1) / 200.0, 2.0 * M_PI * j / 360.0);
                min_re = std::min(min_re, fp.value(z).real());
            }
        CHECK(min_re > 0.0);

        FunctionSpec ratio = FunctionSpec::series([&] {
            // f/z as an explicit series spec
            PowerSeries s = series_shift_div_z(m.f);
            return s.c;
        }());
        SubordinationResult sub = subordination_check(ratio, FunctionSpec::catalog("q-dominant"), 1500);
        CHECK(sub.subordinate);
    }
}

TEST_CASE("schwarz_pick_check examples") {
    auto [l1, r1] = schwarz_pick_check(FunctionSpec::expr("0+1*z"), cplx(0.37, -0.21));
    CHECK(std::abs(l1 - r1) < 1e-13);

    auto [l2, r2] = schwarz_pick_check(FunctionSpec::expr("z^2"), 0.5);
    CHECK(std::abs(l2 - 2.0 * 0.5 / (1.0 - 0.0625)) < 1e-12);
    CHECK(std::abs(r2 - 1.0 / 0.75) < 1e-12);
    CHECK(l2 <= r2 + 1e-12);

    auto [l3, r3] = schwarz_pick_check(FunctionSpec::expr("0.3+0*z"), 0.9);
    CHECK(l3 == 0.0);
    CHECK(std::abs(r3 - 1.0 / (1.0 - 0.81)) < 1e-12);
}

TEST_CASE("schwarz_pick holds for 50 random self-maps at 100 points") {
    for (unsigned seed = 0; seed < 50; ++seed) {
        FunctionSpec omega = random_self_map(seed, 2 + int(seed % 6));
        for (cplx z : gftk_test::random_disk_points(seed * 13 + 1, 100, 0.97)) {
            auto [lhs, rhs] = schwarz_pick_check(omega, z);
            CHECK(lhs <= rhs + 1e-12);
        }
    }
}

TEST_CASE("count_derivative_zeros") {
    CHECK(count_derivative_zeros(Func::compile(FunctionSpec::catalog("koebe")), 0.999) == 0);
    CHECK(count_derivative_zeros(Func::compile(FunctionSpec::expr("z+2*z^2")), 0.999) == 1);
    CHECK(count_derivative_zeros(Func::compile(FunctionSpec::expr("z+z^2+0.4*z^3")), 0.999) == 2);
}

TEST_CASE("prop_schwarz_harness: identity omega gives equality") {
    NormOptions opts;
    opts.n_radial = 150;
    opts.n_angular = 240;
    PropSchwarzResult r =
        prop_schwarz_harness(FunctionSpec::catalog("koebe"), FunctionSpec::expr("0+1*z"), opts);
    CHECK(!r.omega_critical);
    CHECK(r.t_omega < 1e-9);
    CHECK(std::abs(r.lhs - r.rhs) < 1e-6 * (1.0 + r.rhs));
}

TEST_CASE("prop_schwarz_harness: rotations give equality") {
    NormOptions opts;
    opts.n_radial = 150;
    opts.n_angular = 240;
    PropSchwarzResult r = prop_schwarz_harness(FunctionSpec::catalog("phi"),
                                               FunctionSpec::expr("(0.36235775447667357+0.93203908596722629i)*z"), opts);
    CHECK(r.t_omega < 1e-9);
    CHECK(std::abs(r.lhs - r.rhs) < 1e-5 * (1.0 + r.rhs));
}

TEST_CASE("prop_schwarz_harness: Moebius g reduces to the T-product bound") {
    NormOptions opts;
    opts.n_radial = 120;
    opts.n_angular = 180;
    FunctionSpec omega = random_self_map(7, 4, true);
    PropSchwarzResult r = prop_schwarz_harness(FunctionSpec::expr("z/(1-z)"), omega, opts);
    CHECK(!r.omega_critical);
    CHECK(r.s_g < 1e-9);
    CHECK(r.lhs <= r.rhs + 1e-6);
}

TEST_CASE("prop_schwarz_harness: omega with a critical point degenerates to inf <= inf") {
    NormOptions opts;
    opts.n_radial = 100;
    opts.n_angular = 120;
    PropSchwarzResult r =
        prop_schwarz_harness(FunctionSpec::catalog("koebe"), FunctionSpec::expr("0.8*z^2"), opts);
    CHECK(r.omega_critical);
    CHECK(std::isinf(r.lhs));
    CHECK(std::isinf(r.rhs));
    CHECK(r.lhs <= r.rhs); // inf <= inf
}

TEST_CASE("prop_schwarz inequality on 20 random locally-univalent pairs") {
    NormOptions opts;
    opts.n_radial = 100;
    opts.n_angular = 160;
    const char* gs[] = {"koebe", "phi", "psi", "half-plane-cayley"};
    for (unsigned k = 0; k < 20; ++k) {
        FunctionSpec g = FunctionSpec::catalog(gs[k % 4]);
        FunctionSpec omega = random_self_map(1000 + k, 2 + int(k % 5), true);
        PropSchwarzResult r = prop_schwarz_harness(g, omega, opts);
        CHECK(!r.omega_critical);
        CHECK(r.lhs <= r.rhs + 1e-6);
    }
}
