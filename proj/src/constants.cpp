#include "gftk/constants.hpp"

#include <cmath>
#include <functional>

#include "gftk/errors.hpp"
#include "gftk/json_writer.hpp"

namespace gftk {

namespace {

// scan for a sign change, bisect to ~1e-13, then polish with central-difference Newton
double scan_bisect_newton(const std::function<double(double)>& fn, double lo, double hi,
                          int scan_points, const char* what) {
    double a = lo, b = hi, fa = fn(a);
    bool found = false;
    for (int i = 1; i <= scan_points; ++i) {
        const double x = lo + (hi - lo) * double(i) / scan_points;
        const double fx = fn(x);
        if (fa == 0.0) { return a; }
        if ((fa < 0.0) != (fx < 0.0)) {
            b = x;
            found = true;
            break;
        }
        a = x;
        fa = fx;
    }
    if (!found) throw BracketFailure(std::string("no sign change for ") + what);
    double fb = fn(b);
    (void)fb;
    while (b - a > 1e-13) {
        const double m = 0.5 * (a + b);
        const double fm = fn(m);
        if ((fa < 0.0) != (fm < 0.0)) {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    double x = 0.5 * (a + b);
    for (int it = 0; it < 10; ++it) {
        const double step = 1e-7;
        const double d = (fn(x + step) - fn(x - step)) / (2.0 * step);
        if (d == 0.0) break;
        const double nx = x - fn(x) / d;
        if (!(nx > lo && nx < hi)) break;
        if (std::abs(nx - x) < 1e-15) { x = nx; break; }
        x = nx;
    }
    return x;
}

double golden_max(const std::function<double(double)>& fn, double a, double b, int iters) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = fn(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = fn(x1);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

double h(double r) {
    if (!(r > 0.0 && r < 1.0)) throw DomainError("h(r) defined on (0,1)");
    return -(1.0 + r) * (1.0 + r) / (r + 2.0 * std::log(1.0 - r)) - (1.0 - r * r) / r;
}

double solve_r0() {
    auto F = [](double r) {
        const double L = std::log(1.0 - r);
        return 2.0 * (r * r + 1.0) * (r - 1.0) * L * L - 2.0 * r * (r - 1.0) * (r - 1.0) * L +
               r * r * r * (r + 3.0);
    };
    const double root = scan_bisect_newton(F, 1e-6, 1.0 - 1e-9, 4096, "r0 equation");
    // cross-validate against the argmax of h
    const double amax = golden_max([](double r) { return h(r); }, 1e-6, 1.0 - 1e-9, 90);
    if (std::abs(root - amax) > 1e-8)
        throw SolverError("solve_r0: root and argmax-of-h characterizations disagree");
    return root;
}

double varsigma(double theta) {
    if (!(theta > 0.0 && theta < M_PI)) throw DomainError("varsigma(theta) used on (0, pi)");
    const double den = std::cos(theta) + 2.0 * std::log(2.0 * std::sin(theta / 2.0));
    if (std::abs(den) < 1e-12) throw PoleProximity();
    return (std::sin(theta) + theta - M_PI) / den;
}

double solve_pole_theta() {
    auto den = [](double t) { return std::cos(t) + 2.0 * std::log(2.0 * std::sin(t / 2.0)); };
    return scan_bisect_newton(den, 1e-6, M_PI - 1e-9, 4096, "varsigma pole");
}

double arg_q_boundary(double theta) {
    if (theta > M_PI && theta < 2.0 * M_PI) return -arg_q_boundary(2.0 * M_PI - theta);
    // w = -e^{i theta} - 2 log(2 sin(theta/2)) - i (theta - pi); the two-argument
    // arctangent keeps the correct quadrant (the bracketed number crosses into the
    // second quadrant near theta0, where principal arctan of varsigma is off by pi)
    const double wre = -(std::cos(theta) + 2.0 * std::log(2.0 * std::sin(theta / 2.0)));
    const double wim = -(std::sin(theta) + theta - M_PI);
    return std::atan2(wim, wre) - theta;
}

Theta0Solution solve_theta0_beta0_alpha0() {
    const double pole = solve_pole_theta();
    const double lo = pole + 1e-6, hi = M_PI - 1e-9;
    // dense scan, then golden-section refinement
    const int n = 100000;
    double best = -1e9, bx = lo;
    for (int i = 0; i <= n; ++i) {
        const double t = lo + (hi - lo) * double(i) / n;
        const double v = arg_q_boundary(t);
        if (v > best) {
            best = v;
            bx = t;
        }
    }
    const double span = (hi - lo) / n;
    const double theta0 = golden_max(arg_q_boundary, std::max(lo, bx - 2 * span),
                                     std::min(hi, bx + 2 * span), 80);

    Theta0Solution sol{};
    sol.theta0 = theta0;
    sol.beta0 = 2.0 / M_PI * arg_q_boundary(theta0);
    sol.alpha0 = 1.0 / sol.beta0;
    // root characterization: varsigma' - varsigma^2 - 1 = 0 right of the pole
    auto crit = [](double t) {
        const double step = 1e-7;
        const double d = (varsigma(t + step) - varsigma(t - step)) / (2.0 * step);
        const double v = varsigma(t);
        return d - v * v - 1.0;
    };
    sol.root_theta0 = scan_bisect_newton(crit, pole + 1e-3, M_PI - 1e-3, 8192, "theta0 criterion");
    sol.characterization_gap = std::abs(sol.root_theta0 - sol.theta0);
    if (sol.characterization_gap > 1e-4)
        throw SolverError("theta0: optimization and root characterizations disagree");
    return sol;
}

PaperConstants compute_paper_constants() {
    PaperConstants c;
    c.r0 = solve_r0();
    c.h_r0 = h(c.r0);
    c.inv_h_r0 = 1.0 / c.h_r0;
    c.pole_theta = solve_pole_theta();
    const Theta0Solution sol = solve_theta0_beta0_alpha0();
    c.theta0 = sol.theta0;
    c.beta0 = sol.beta0;
    c.alpha0 = sol.alpha0;
    c.q_at_theta0 = Func::compile(FunctionSpec::catalog("q-dominant"))
                        .value(std::polar(1.0, c.theta0));
    return c;
}

SectorCheck sector_containment_check(const FunctionSpec& f, double beta, int n_samples,
                                     double r_max) {
    if (!(beta > 0.0 && beta <= 2.0)) throw DomainError("sector_containment_check needs beta in (0,2]");
    Func fn = Func::compile(f);
    // radial-angular grid with about n_samples points
    int na = std::max(8, (int)std::round(std::sqrt(2.0 * n_samples)));
    int nr = std::max(4, n_samples / na);
    SectorCheck out{true, cplx(0.0), 0.0};
    for (int j = 0; j < na; ++j) {
        const double th = 2.0 * M_PI * j / na;
        for (int i = 0; i < nr; ++i) {
            const double r = r_max * std::sin(M_PI * (i + 1) / (2.0 * (nr + 1)));
            const cplx z = std::polar(r, th);
            const double a = std::abs(std::arg(fn.value(z)));
            if (a > out.max_abs_arg) {
                out.max_abs_arg = a;
                out.worst_point = z;
            }
        }
    }
    out.contained = out.max_abs_arg < beta * M_PI / 2.0;
    return out;
}

PowerSeries g_series(int order) {
    // g = 1 + ((1+z)/(1-z)) * (z / (z + 2 log(1-z))) built from series algebra;
    // z + 2 log(1-z) = -z - z^2 - (2/3) z^3 - ... so the z-ratio is -1/q(z)
    const int N = order;
    PowerSeries log1mz(N + 1); // log(1-z) = -sum z^n/n
    for (int n = 1; n <= N + 1; ++n) log1mz.c[n] = -1.0 / double(n);
    PowerSeries den = series_add(PowerSeries::identity(N + 1), series_scale(2.0, log1mz));
    PowerSeries ratio = series_div(PowerSeries::constant(1.0, N), series_shift_div_z(den)); // z/(z+2log(1-z))
    PowerSeries onepz = PowerSeries::constant(1.0, N), onemz = onepz;
    onepz.c[1] = 1.0;
    onemz.c[1] = -1.0;
    PowerSeries cay = series_div(onepz, onemz);
    return series_add(PowerSeries::constant(1.0, N), series_mul(cay, ratio));
}

cplx g_value(cplx z) {
    if (std::abs(z) < 0.25) {
        static const PowerSeries g = g_series(96);
        return series_eval(g, z);
    }
    const cplx d = 1.0 - z;
    if (std::abs(d) < 1e-14) throw DomainError("g singular at z = 1");
    const cplx den = z + 2.0 * std::log(d);
    if (std::abs(den) < 1e-14) throw DomainError("g: z + 2 log(1-z) vanished");
    return 1.0 + (1.0 + z) / d * (z / den);
}

std::string constants_report_json(const PaperConstants& c) {
    ReferenceConstants ref;
    JsonWriter w;
    w.begin_object();
    w.key("constants").begin_object()
        .key("r0").number(c.r0)
        .key("h_r0").number(c.h_r0)
        .key("inv_h_r0").number(c.inv_h_r0)
        .key("theta0").number(c.theta0)
        .key("beta0").number(c.beta0)
        .key("alpha0").number(c.alpha0)
        .key("pole_theta").number(c.pole_theta)
        .end_object();
    w.key("reference").begin_object()
        .key("r0").number(ref.r0)
        .key("h_r0").number(ref.h_r0)
        .key("inv_h_r0").number(ref.inv_h_r0)
        .key("theta0").number(ref.theta0)
        .key("beta0").number(ref.beta0)
        .key("alpha0").number(ref.alpha0)
        .end_object();
    w.key("deviation").begin_object()
        .key("r0").number(std::abs(c.r0 - ref.r0))
        .key("h_r0").number(std::abs(c.h_r0 - ref.h_r0))
        .key("inv_h_r0").number(std::abs(c.inv_h_r0 - ref.inv_h_r0))
        .key("theta0").number(std::abs(c.theta0 - ref.theta0))
        .key("beta0").number(std::abs(c.beta0 - ref.beta0))
        .key("alpha0").number(std::abs(c.alpha0 - ref.alpha0))
        .end_object();
    // both readings of the alpha0 definition: 1/beta0 (used) and the literal
    // pi/(2 q(e^{i theta0})), which is complex
    const cplx lit = M_PI / (2.0 * c.q_at_theta0);
    w.key("alpha0_literal_pi_over_2q").complex_pair(lit);
    w.key("q_at_theta0").complex_pair(c.q_at_theta0);
    w.end_object();
    return w.str();
}

} // namespace gftk
