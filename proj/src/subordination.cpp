#include "gftk/subordination.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "gftk/errors.hpp"

namespace gftk {

namespace {

double cross(cplx o, cplx a, cplx b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

// Andrew monotone chain; returns counterclockwise vertices without the closing point
std::vector<cplx> convex_hull(std::vector<cplx> pts) {
    std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](cplx a, cplx b) { return a == b; }),
              pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return pts;
    std::vector<cplx> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

cplx limit_value_at_zero(const Func& f) {
    try {
        return f.value(0.0);
    } catch (const EvalError&) {
        // removable singularity (f/z style): average over a tiny 4-point stencil
        // cancels the O(z), O(z^2), O(z^3) terms
        const double eps = 1e-7;
        cplx acc = 0.0;
        for (int k = 0; k < 4; ++k) acc += f.value(std::polar(eps, M_PI_2 * k));
        return acc / 4.0;
    }
}

std::string poly_to_expr(const std::vector<cplx>& coeffs) {
    // b0 + z*(b1 + z*(...)) in Horner form; %.17g literals round-trip exactly
    std::string s;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        const std::string lit = "(" + format_complex(coeffs[k]) + ")";
        if (s.empty())
            s = lit;
        else
            s = lit + "+z*(" + s + ")";
    }
    return s.empty() ? "0" : s;
}

} // namespace

RangeHull build_range_hull(const FunctionSpec& q, int n_samples, double r_max) {
    Func fn = Func::compile(q);
    RangeHull out;
    out.boundary_samples.reserve(n_samples);
    for (int j = 0; j < n_samples; ++j) {
        const double th = 2.0 * M_PI * j / n_samples;
        out.boundary_samples.push_back(fn.value(std::polar(r_max, th)));
    }
    out.hull = convex_hull(out.boundary_samples);
    // convexity spot check: a convex boundary keeps (almost) all samples as vertices
    out.convex_ok = out.hull.size() + 8 >= out.boundary_samples.size() * 99 / 100;
    return out;
}

double hull_margin(const RangeHull& hull, cplx w) {
    const auto& h = hull.hull;
    if (h.size() < 3) return -1e300;
    double margin = 1e300;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const cplx a = h[i], b = h[(i + 1) % h.size()];
        const double len = std::abs(b - a);
        if (len < 1e-300) continue;
        margin = std::min(margin, cross(a, b, w) / len);
    }
    return margin;
}

bool hull_contains(const RangeHull& hull, cplx w, double tol) {
    return hull_margin(hull, w) >= -tol;
}

SubordinationResult subordination_check(const FunctionSpec& f, const FunctionSpec& q_convex,
                                        int n_samples, double sample_r_max) {
    const RangeHull hull = build_range_hull(q_convex);
    Func ff = Func::compile(f);
    Func qq = Func::compile(q_convex);

    SubordinationResult out{};
    out.convex_ok = hull.convex_ok;
    out.center_f = limit_value_at_zero(ff);
    out.center_q = limit_value_at_zero(qq);

    int na = std::max(8, (int)std::round(std::sqrt(2.0 * n_samples)));
    int nr = std::max(4, n_samples / na);
    out.worst_margin = 1e300;
    for (int j = 0; j < na; ++j) {
        const double th = 2.0 * M_PI * j / na;
        for (int i = 0; i < nr; ++i) {
            const double r = sample_r_max * (i + 1) / nr;
            const cplx z = std::polar(r, th);
            const cplx w = ff.value(z);
            const double m = hull_margin(hull, w);
            if (m < out.worst_margin) {
                out.worst_margin = m;
                out.worst_point = w;
            }
        }
    }
    out.subordinate = out.worst_margin >= -1e-10 &&
                      std::abs(out.center_f - out.center_q) <= 1e-10;
    return out;
}

RandomRMember make_R_member(const std::vector<cplx>& b, int order) {
    RandomRMember out;
    out.b = b;

    // series route: w = z b(z), f' = (1 + w)/(1 - w), f = integral
    PowerSeries bs(order);
    for (int n = 0; n < (int)b.size() && n <= order; ++n) bs.c[n] = b[static_cast<std::size_t>(n)];
    PowerSeries w = series_mul(PowerSeries::identity(order), bs);
    PowerSeries one = PowerSeries::constant(1.0, order);
    PowerSeries fp = series_div(series_add(one, w), series_sub(one, w));
    out.f = series_integrate(series_truncate(fp, order - 1));

    const std::string btxt = poly_to_expr(b);
    out.fprime_expr = FunctionSpec::expr("(1+z*(" + btxt + "))/(1-z*(" + btxt + "))");
    return out;
}

RandomRMember random_R_member_exact(unsigned seed, int degree, int order) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> rho_dist(0.2, 0.95);

    std::vector<cplx> b(static_cast<std::size_t>(degree) + 1);
    double l1 = 0.0;
    for (auto& v : b) {
        v = cplx(unit(rng), unit(rng));
        l1 += std::abs(v);
    }
    const double rho = rho_dist(rng);
    if (l1 > 0.0)
        for (auto& v : b) v *= rho / l1; // sum |b_n| = rho < 1
    return make_R_member(b, order);
}

PowerSeries random_R_member(unsigned seed, int degree, int order) {
    return random_R_member_exact(seed, degree, order).f;
}

FunctionSpec random_self_map(unsigned seed, int degree, bool require_lu) {
    std::mt19937 rng(seed ^ 0x9e3779b9u);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> rho_dist(0.3, 0.95);

    std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
    for (auto& v : c) v = cplx(unit(rng), unit(rng));
    if (require_lu) {
        // make |c1| dominate sum_{k>=2} k |c_k| so omega' never vanishes
        double dom = 0.0;
        for (int k = 2; k <= degree; ++k) dom += k * std::abs(c[static_cast<std::size_t>(k)]);
        c[1] = cplx(1.3 * dom + 0.5, 0.0) * std::polar(1.0, unit(rng) * M_PI);
    }
    double l1 = 0.0;
    for (const auto& v : c) l1 += std::abs(v);
    const double rho = rho_dist(rng);
    if (l1 > 0.0)
        for (auto& v : c) v *= rho / l1;
    return FunctionSpec::expr(poly_to_expr(c));
}

std::pair<double, double> schwarz_pick_check(const FunctionSpec& omega, cplx z) {
    if (std::abs(z) >= 1.0) throw DomainError("schwarz_pick_check needs |z| < 1");
    const Jet3 j = Func::compile(omega).jet(z);
    if (std::abs(j.f0) >= 1.0) throw DomainError("omega is not a self-map at this point");
    const double lhs = std::abs(j.f1) / (1.0 - std::norm(j.f0));
    const double rhs = 1.0 / (1.0 - std::norm(z));
    return {lhs, rhs};
}

int count_derivative_zeros(const Func& f, double radius, int samples) {
    // winding number of f' along |z| = radius via the unwrapped argument
    double total = 0.0;
    cplx prev = f.jet(std::polar(radius, 0.0)).f1;
    for (int k = 1; k <= samples; ++k) {
        const double th = 2.0 * M_PI * k / samples;
        const cplx cur = f.jet(std::polar(radius, th)).f1;
        if (std::abs(cur) < 1e-300 || std::abs(prev) < 1e-300)
            throw EvalError("count_derivative_zeros: f' vanished on the circle");
        total += std::arg(cur / prev);
        prev = cur;
    }
    return (int)std::lround(total / (2.0 * M_PI));
}

PropSchwarzResult prop_schwarz_harness(const FunctionSpec& g, const FunctionSpec& omega,
                                       const NormOptions& opts) {
    PropSchwarzResult out{};
    Func gf = Func::compile(g);
    Func of = Func::compile(omega);

    out.omega_critical = count_derivative_zeros(of, std::min(0.999, opts.r_max)) > 0;

    // f' = (g' o omega) omega': jets of f', then T_f, S_f
    auto composed = std::make_shared<std::pair<Func, Func>>(gf, of);
    NormTarget s_f;
    s_f.weight_power = 2;
    s_f.field = [composed](cplx z) -> cplx {
        const Jet3 jo = composed->second.jet(z);
        const Jet3 jg = composed->first.jet(jo.f0);
        const cplx fp = jg.f1 * jo.f1;
        const cplx fpp = jg.f2 * jo.f1 * jo.f1 + jg.f1 * jo.f2;
        const cplx fppp = jg.f3 * jo.f1 * jo.f1 * jo.f1 + 3.0 * jg.f2 * jo.f1 * jo.f2 + jg.f1 * jo.f3;
        if (std::abs(fp) < 1e-14) throw CriticalPoint();
        const cplx t = fpp / fp;
        return fppp / fp - 1.5 * t * t;
    };

    const double s_f_value = norm_search(s_f, opts).value;
    out.s_g = norm({g, FieldKind::Schwarzian, {}, 1.0}, opts).value;
    out.t_g = norm({g, FieldKind::PreSchwarzian, {}, 1.0}, opts).value;
    out.t_omega = norm({omega, FieldKind::PreSchwarzian, {}, 1.0}, opts).value;

    if (out.omega_critical) {
        // omega' vanishes inside the disk: ||T_omega|| and ||S_f|| are infinite
        out.lhs = std::numeric_limits<double>::infinity();
        out.rhs = std::numeric_limits<double>::infinity();
        return out;
    }
    out.lhs = s_f_value;
    out.rhs = out.s_g + out.t_omega * out.t_g;
    return out;
}

} // namespace gftk
