#include <doctest.h>

#include "gftk/constants.hpp"
#include "test_util.hpp"

using namespace gftk;

TEST_CASE("h evaluations") {
    // frozen from a 30-digit evaluation of the closed form
    CHECK(std::abs(h(0.5) - 1.03865995170834500) < 1e-12);
    CHECK(h(1e-6) > 0.99);
    CHECK(h(1e-6) < 1.01);
    CHECK_THROWS_AS(h(0.0), DomainError);
    CHECK_THROWS_AS(h(1.0), DomainError);
}

TEST_CASE("r0 and h(r0) against the six-decimal references") {
    const double r0 = solve_r0();
    CHECK(std::abs(r0 - 0.329423) < 1e-5);
    CHECK(std::abs(h(r0) - 1.055681) < 1e-5);
    CHECK(std::abs(1.0 / h(r0) - 0.947255) < 1e-5);
    // critical-point characterization
    const double step = 1e-6;
    const double hp = (h(r0 + step) - h(r0 - step)) / (2.0 * step);
    CHECK(std::abs(hp) < 1e-6);
    // tighter: the 30-digit oracle gives r0 = 0.329423291545839...
    CHECK(std::abs(r0 - 0.3294232915458390) < 1e-9);
}

TEST_CASE("sup of h over (0,1) is h(r0)") {
    const double r0 = solve_r0();
    const double hr0 = h(r0);
    for (int i = 1; i < 1000000; ++i) {
        const double r = double(i) / 1000000.0;
        if (h(r) > hr0 + 1e-9) {
            CAPTURE(r);
            FAIL("h exceeded h(r0)");
        }
    }
    CHECK(true);
}

TEST_CASE("varsigma values and pole") {
    // (1 - pi/2)/log 2 at theta = pi/2
    CHECK(std::abs(varsigma(M_PI_2) - (-0.823485030024633497)) < 1e-12);
    CHECK(std::abs(varsigma(M_PI_2) - (-0.823484)) < 1e-5 + 2e-6); // six-decimal reference

    const double pole = solve_pole_theta();
    CHECK(std::abs(pole - 0.695022883995471) < 1e-9);
    const double left = varsigma(pole - 1e-3);
    const double right = varsigma(pole + 1e-3);
    CHECK(left * right < 0.0);
    CHECK(std::abs(left) > 100.0);
    CHECK(std::abs(right) > 100.0);
    CHECK_THROWS_AS(varsigma(pole), PoleProximity);

    // numerator vanishes at theta = pi while the denominator does not
    CHECK(std::abs(varsigma(M_PI - 1e-6)) < 1e-4);
}

TEST_CASE("arg q on the boundary") {
    // value at the paper's theta0 approximates beta0 pi/2
    CHECK(std::abs(arg_q_boundary(1.141377) - 0.911566) < 5e-4);
    // the decay toward 0 is only logarithmic: arg q ~ pi/(2 |log theta|);
    // frozen against a 40-digit direct evaluation of arg q(e^{i 1e-4})
    CHECK(std::abs(arg_q_boundary(1e-4) - 0.1783081877034687) < 1e-9);
    CHECK(arg_q_boundary(1e-6) < arg_q_boundary(1e-4));
    for (double t : {0.5, 1.0, 2.0, 3.0})
        CHECK(std::abs(arg_q_boundary(2.0 * M_PI - t) + arg_q_boundary(t)) < 1e-12);
}

TEST_CASE("theta0, beta0, alpha0") {
    const Theta0Solution sol = solve_theta0_beta0_alpha0();
    CHECK(std::abs(sol.theta0 - 1.141377) < 1e-5);
    CHECK(std::abs(sol.beta0 - 0.580356) < 1e-5);
    CHECK(std::abs(sol.alpha0 - 1.723078) < 1e-5);
    CHECK(sol.characterization_gap < 1e-4);
    // varsigma root identity at theta0
    const double step = 1e-6;
    const double vp = (varsigma(sol.theta0 + step) - varsigma(sol.theta0 - step)) / (2.0 * step);
    CHECK(std::abs(vp - varsigma(sol.theta0) * varsigma(sol.theta0) - 1.0) < 1e-6);
}

TEST_CASE("paper constants bundle") {
    const PaperConstants c = compute_paper_constants();
    CHECK(std::abs(c.h_r0 * c.inv_h_r0 - 1.0) < 1e-12);
    CHECK(std::abs(c.alpha0 * c.beta0 - 1.0) < 1e-10);
    CHECK(c.theta0 > c.pole_theta);
    const std::string js = constants_report_json(c);
    CHECK(js.find("\"r0\":0.3294232") != std::string::npos);
    CHECK(js.find("\"deviation\"") != std::string::npos);
    CHECK(js.find("\"alpha0_literal_pi_over_2q\"") != std::string::npos);
}

TEST_CASE("sector containment of the q-dominant range") {
    const Theta0Solution sol = solve_theta0_beta0_alpha0();
    FunctionSpec q = FunctionSpec::catalog("q-dominant");

    SectorCheck inside = sector_containment_check(q, sol.beta0 + 1e-3, 300000);
    CHECK(inside.contained);

    SectorCheck outside = sector_containment_check(q, sol.beta0 - 1e-2, 300000);
    CHECK(!outside.contained);
    // worst point sits near e^{i theta0} (or its conjugate)
    CHECK(std::abs(std::abs(outside.worst_point) - 0.9999) < 1e-2);
    CHECK(std::abs(std::abs(std::arg(outside.worst_point)) - sol.theta0) < 0.05);

    SectorCheck constant = sector_containment_check(FunctionSpec::expr("1+0*z"), 0.5, 1000);
    CHECK(constant.contained);
}

TEST_CASE("g series: negative coefficients") {
    PowerSeries g = g_series(256);
    CHECK(std::abs(g.coeff(0)) < 1e-14); // constant term cancels exactly
    CHECK(std::abs(g.coeff(1) - (-1.0)) < 1e-12);
    CHECK(std::abs(g.coeff(2) - (-1.0 / 3.0)) < 1e-12);
    for (int n = 1; n <= 256; ++n) {
        CHECK(g.coeff(n).real() <= 1e-14);
        CHECK(std::abs(g.coeff(n).imag()) < 1e-14);
    }
}

TEST_CASE("g closed form matches the series near 0 and the sup sits on the real axis") {
    PowerSeries gs = g_series(96);
    for (cplx z : gftk_test::random_disk_points(61, 12, 0.45))
        gftk_test::check_close(g_value(z), series_eval(gs, z), 1e-10);

    // sup over the disk of (1-|z|^2)/|z| |g(z)| is attained on the positive real axis
    const int na = 720, nr = 200;
    double best = -1.0, best_theta = 0.0;
    for (int j = 0; j < na; ++j) {
        const double th = 2.0 * M_PI * j / na;
        for (int i = 0; i < nr; ++i) {
            const double r = 0.9999 * std::sin(M_PI * (i + 1) / (2.0 * (nr + 1)));
            const cplx z = std::polar(r, th);
            const double v = (1.0 - r * r) / r * std::abs(g_value(z));
            if (v > best) {
                best = v;
                best_theta = th;
            }
        }
    }
    CHECK(std::min(best_theta, 2.0 * M_PI - best_theta) <= 2.0 * M_PI / na + 1e-12);
    // and the value reproduces h(r0)
    CHECK(std::abs(best - h(solve_r0())) < 1e-3);
}
