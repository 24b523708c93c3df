#include <doctest.h>

#include "gftk/norms.hpp"
#include "test_util.hpp"

using namespace gftk;
using gftk_test::check_close;

TEST_CASE("pre_schwarzian and schwarzian point values") {
    Func koebe = Func::compile(FunctionSpec::catalog("koebe"));
    Func phi = Func::compile(FunctionSpec::catalog("phi"));
    Func id = Func::compile(FunctionSpec::expr("z"));

    check_close(pre_schwarzian(koebe, 0.0), 4.0, 1e-14);
    check_close(pre_schwarzian(phi, 0.0), 2.0, 1e-14);
    check_close(pre_schwarzian(id, cplx(0.3, 0.4)), 0.0, 1e-15);

    check_close(schwarzian(koebe, 0.0), -6.0, 1e-13);
    // T_K = (4+2z)/(1-z^2), S_K = -6/(1-z^2)^2 on a few interior points
    for (cplx z : gftk_test::random_disk_points(3, 8, 0.9)) {
        const cplx d = 1.0 - z * z;
        check_close(pre_schwarzian(koebe, z), (4.0 + 2.0 * z) / d, 1e-11 * (1.0 + 1.0 / std::abs(d)));
        check_close(schwarzian(koebe, z), -6.0 / (d * d), 1e-10 * (1.0 + 1.0 / std::norm(d)));
    }

    // Moebius maps are annihilated
    Func moebius = Func::compile(FunctionSpec::expr("z/(1-z)"));
    for (cplx z : gftk_test::random_disk_points(9, 10, 0.9))
        check_close(schwarzian(moebius, z), 0.0, 1e-9);

    // Hille: S(0) has modulus 2(1+eps^2)
    Func hille = Func::compile(FunctionSpec::catalog("hille", {{"epsilon", 1.0}}));
    CHECK(std::abs(std::abs(schwarzian(hille, 0.0)) - 4.0) < 1e-12);

    Func crit = Func::compile(FunctionSpec::expr("z+2*z^2"));
    CHECK_THROWS_AS(pre_schwarzian(crit, cplx(-0.25, 0.0)), CriticalPoint);
}

TEST_CASE("norm: catalog sup values") {
    NormOptions opts; // defaults: 400 x 720, r_max 0.9999

    NormResult tk = norm({FunctionSpec::catalog("koebe"), FieldKind::PreSchwarzian, {}, 1.0}, opts);
    CHECK(std::abs(tk.value - (4.0 + 2.0 * opts.r_max)) < 1e-3);
    CHECK(std::abs(tk.argmax.imag()) < 1e-6); // attained on the positive real axis
    CHECK(tk.refined);
    CHECK(std::abs(tk.argmax) <= opts.r_max + 1e-12);

    NormResult sk = norm({FunctionSpec::catalog("koebe"), FieldKind::Schwarzian, {}, 1.0}, opts);
    CHECK(std::abs(sk.value - 6.0) < 1e-3);

    NormResult tphi = norm({FunctionSpec::catalog("phi"), FieldKind::PreSchwarzian, {}, 1.0}, opts);
    CHECK(std::abs(tphi.value - 2.0) < 1e-3);
}

TEST_CASE("norm: self-consistency of value and argmax") {
    NormOptions opts;
    opts.n_radial = 120;
    opts.n_angular = 180;
    DerivativeField df{FunctionSpec::catalog("koebe"), FieldKind::Schwarzian, {}, 1.0};
    NormResult r = norm(df, opts);
    Func koebe = Func::compile(df.f);
    const double w = std::pow(1.0 - std::norm(r.argmax), 2) * std::abs(schwarzian(koebe, r.argmax));
    CHECK(std::abs(w - r.value) < 1e-12 * (1.0 + r.value));
}

TEST_CASE("norm: Moebius annihilation") {
    NormOptions opts;
    opts.n_radial = 100;
    opts.n_angular = 144;
    const char* moebius[] = {"z", "z/(1-z)", "(z-0.3)/(1-0.3*z)"};
    for (const char* m : moebius) {
        NormResult r = norm({FunctionSpec::expr(m), FieldKind::Schwarzian, {}, 1.0}, opts);
        CHECK(r.value < 1e-9);
    }
}

TEST_CASE("norm: Hille family S-norms") {
    NormOptions opts;
    for (double eps : {0.1, 0.5, 1.0}) {
        NormResult r =
            norm({FunctionSpec::catalog("hille", {{"epsilon", eps}}), FieldKind::Schwarzian, {}, 1.0},
                 opts);
        CHECK(std::abs(r.value - 2.0 * (1.0 + eps * eps)) < 1e-3);
    }
}

TEST_CASE("norm: S of I_alpha[phi] matches 2|a|(|a|+2) for real alpha") {
    NormOptions opts;
    for (double a : {0.5, 1.0, 1.5}) {
        NormResult r = norm(
            {FunctionSpec::catalog("phi"), FieldKind::Schwarzian, TransformOp::IAlpha, cplx(a, 0.0)},
            opts);
        CHECK(std::abs(r.value - 2.0 * a * (a + 2.0)) < 1e-3);
    }
}

TEST_CASE("norm_scaling_check: T norm of J_alpha scales by |alpha|") {
    NormOptions opts;
    opts.n_radial = 200;
    opts.n_angular = 360;

    auto [l1, r1] = norm_scaling_check(FunctionSpec::catalog("koebe"), cplx(1.0, 0.0), opts);
    CHECK(std::abs(l1 - r1) < 1e-12 * (1.0 + r1));

    auto [l2, r2] = norm_scaling_check(FunctionSpec::catalog("koebe"), cplx(0.5, 0.0), opts);
    CHECK(std::abs(l2 / r2 - 1.0) < 1e-6);

    auto [l3, r3] = norm_scaling_check(FunctionSpec::catalog("phi"), cplx(0.3, 0.4), opts);
    CHECK(std::abs(l3 / r3 - 1.0) < 1e-6);
}

TEST_CASE("norm: monotone under grid refinement") {
    DerivativeField df{FunctionSpec::catalog("phi"), FieldKind::PreSchwarzian, {}, 1.0};
    NormOptions coarse;
    coarse.n_radial = 100;
    coarse.n_angular = 180;
    NormOptions fine = coarse;
    fine.n_radial *= 2;
    fine.n_angular *= 2;
    const double v1 = norm(df, coarse).value;
    const double v2 = norm(df, fine).value;
    CHECK(v2 >= v1 - 1e-9);
}

TEST_CASE("norm: interior critical point reports Infinity") {
    // f' = 1 + 4z vanishes at z = -1/4; refinement climbs the pole past 1e12
    NormResult r = norm({FunctionSpec::expr("z+2*z^2"), FieldKind::PreSchwarzian, {}, 1.0}, {});
    CHECK(r.infinite());
}

TEST_CASE("norm: AllPointsSingular when nothing evaluates") {
    NormTarget t;
    t.weight_power = 1;
    t.field = [](cplx) -> cplx { throw CriticalPoint(); };
    NormOptions opts;
    opts.n_radial = 4;
    opts.n_angular = 8;
    CHECK_THROWS_AS(norm_search(t, opts), AllPointsSingular);
}

TEST_CASE("norm result JSON shape") {
    NormOptions opts;
    opts.n_radial = 60;
    opts.n_angular = 90;
    NormResult r = norm({FunctionSpec::catalog("phi"), FieldKind::PreSchwarzian, {}, 1.0}, opts);
    const std::string js = norm_result_to_json(r);
    CHECK(js.find("\"value\":") != std::string::npos);
    CHECK(js.find("\"argmax\":[") != std::string::npos);
    CHECK(js.find("\"grid\":{\"n_radial\":60") != std::string::npos);
    CHECK(js.find("\"refined\":true") != std::string::npos);
}
