#include "gftk/loewner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gftk/constants.hpp"
#include "gftk/errors.hpp"
#include "gftk/json_writer.hpp"
#include "gftk/quadrature.hpp"

namespace gftk {

cplx herglotz_of_chain_R(const Func& f, cplx z, double t) {
    if (std::abs(z) >= 1.0) throw DomainError("herglotz_of_chain_R needs |z| < 1");
    if (t < 0.0) throw DomainError("herglotz_of_chain_R needs t >= 0");
    const cplx d = f.jet(z).f1 + t;
    if (std::abs(d) < 1e-14) throw DivergentP();
    return 1.0 / d;
}

cplx herglotz_of_chain_R(const FunctionSpec& f, cplx z, double t) {
    return herglotz_of_chain_R(Func::compile(f), z, t);
}

double becker_dilatation(cplx p) {
    const cplx den = 1.0 + p;
    if (std::abs(den) < 1e-14) throw PoleAtMinusOne();
    return std::abs((1.0 - p) / den);
}

double betker_dilatation(cplx p, cplx q) {
    const cplx den = p + q;
    if (std::abs(den) < 1e-14) throw DegenerateDenominator();
    return std::abs((p - std::conj(q)) / den);
}

// ---------------------------------------------------------------------------
// tracked arguments along rays
// ---------------------------------------------------------------------------

namespace {

// continuous log of w(z) along a ray, with recursive local refinement when the
// ratio test fails; returns max |Im(alpha log w)| over the walked samples
struct RayArgWalker {
    const std::function<cplx(cplx)>& w;
    cplx alpha;
    double max_abs = 0.0;

    void walk(double theta, const std::vector<double>& radii) {
        LogTracker tracker;
        tracker.seed(1.0, 0.0);
        double r_prev = 0.0;
        for (double r : radii) {
            step_to(tracker, r_prev, r, theta, 0);
            r_prev = r;
        }
    }

    void step_to(LogTracker& tracker, double r0, double r1, double theta, int depth) {
        cplx lg;
        if (tracker.step(w(std::polar(r1, theta)), &lg)) {
            const double a = std::abs((alpha * lg).imag());
            if (a > max_abs) max_abs = a;
            return;
        }
        if (depth >= 24) throw BranchTrackingFailure("argument tracking failed along ray");
        const double rm = 0.5 * (r0 + r1);
        step_to(tracker, r0, rm, theta, depth + 1);
        step_to(tracker, rm, r1, theta, depth + 1);
    }
};

const PaperConstants& cached_constants() {
    static const PaperConstants c = compute_paper_constants();
    return c;
}

} // namespace

double tracked_max_abs_arg(const Func& f, std::optional<TransformOp> op, cplx alpha,
                           int n_radial, int n_angular, double r_max) {
    std::function<cplx(cplx)> w;
    if (op && *op != TransformOp::IAlpha) {
        w = [&f](cplx z) { return std::abs(z) < 1e-12 ? f.jet(z).f1 : f.value(z) / z; };
        if (*op == TransformOp::Alexander) alpha = 1.0;
    } else {
        w = [&f](cplx z) { return f.jet(z).f1; };
    }
    std::vector<double> radii(n_radial);
    for (int i = 0; i < n_radial; ++i) radii[i] = r_max * double(i + 1) / n_radial;
    RayArgWalker walker{w, alpha, 0.0};
    for (int j = 0; j < n_angular; ++j) walker.walk(2.0 * M_PI * j / n_angular, radii);
    return walker.max_abs;
}

// ---------------------------------------------------------------------------
// criteria report
// ---------------------------------------------------------------------------

namespace {

CriterionCheck make_check(std::string id, double measured, double threshold, bool pass,
                          std::string note = "") {
    return {std::move(id), measured, threshold, pass ? "pass" : "fail", std::move(note)};
}

} // namespace

CriteriaReport criteria_report(const FunctionSpec& fspec, cplx alpha, const NormOptions& opts) {
    CriteriaReport rep;
    rep.f = fspec;
    rep.alpha = alpha;
    Func f = Func::compile(fspec);
    const PaperConstants& pc = cached_constants();
    const double aa = std::abs(alpha);

    // (a) Noshiro-Warschawski membership: min Re f' over the grid
    bool nw_ok = false;
    try {
        double min_re = 1e300;
        for (int j = 0; j < opts.n_angular; ++j) {
            const double th = 2.0 * M_PI * j / opts.n_angular;
            for (int i = 0; i < opts.n_radial; ++i) {
                const double r = opts.r_max * std::sin(M_PI * (i + 1) / (2.0 * (opts.n_radial + 1)));
                min_re = std::min(min_re, f.jet(std::polar(r, th)).f1.real());
            }
        }
        rep.min_re_fprime = min_re;
        rep.checks.push_back(make_check("noshiro-warschawski", min_re, 0.0, min_re > 0.0,
                                        "univalent if Re f' > 0 on the disk"));
        nw_ok = true;
    } catch (const EvalError& e) {
        rep.checks.push_back({"noshiro-warschawski", 0.0, 0.0, "inconclusive", e.what()});
    }

    // (b) sector bound on arg f' and the implied extension dilatation
    try {
        rep.gamma_hat = 2.0 / M_PI *
                        tracked_max_abs_arg(f, std::nullopt, 1.0, opts.n_radial / 2,
                                            opts.n_angular, opts.r_max);
        rep.qc_bound = std::sin(std::min(1.0, rep.gamma_hat) * M_PI / 2.0);
        rep.checks.push_back(make_check("qcext-sector", rep.gamma_hat, 1.0, rep.gamma_hat < 1.0,
                                        "sin(gamma pi/2)-qc extendable if gamma < 1; bound " +
                                            JsonWriter::format_double(rep.qc_bound)));
    } catch (const EvalError& e) {
        rep.checks.push_back({"qcext-sector", 0.0, 1.0, "inconclusive", e.what()});
    }

    // (c) Becker and (d) Nehari
    try {
        rep.t_norm = norm({fspec, FieldKind::PreSchwarzian, {}, 1.0}, opts).value;
        rep.checks.push_back(make_check("becker-univalence", rep.t_norm, 1.0, rep.t_norm <= 1.0,
                                        "univalent if ||T_f|| <= 1; k-qc extendable for k = ||T_f|| < 1"));
    } catch (const EvalError& e) {
        rep.checks.push_back({"becker-univalence", 0.0, 1.0, "inconclusive", e.what()});
    }
    try {
        rep.s_norm = norm({fspec, FieldKind::Schwarzian, {}, 1.0}, opts).value;
        rep.checks.push_back(make_check("nehari-univalence", rep.s_norm, 2.0, rep.s_norm <= 2.0,
                                        "univalent if ||S_f|| <= 2"));
    } catch (const EvalError& e) {
        rep.checks.push_back({"nehari-univalence", 0.0, 2.0, "inconclusive", e.what()});
    }

    // (e) alpha-threshold checks
    rep.checks.push_back(make_check("j-alpha-classical", aa, 0.25, aa <= 0.25,
                                    "J_alpha[S] in S for |alpha| <= 1/4"));
    rep.checks.push_back(make_check("i-alpha-classical", aa, 0.25, aa <= 0.25,
                                    "I_alpha[S] in S for |alpha| <= 1/4"));
    rep.checks.push_back(make_check("j-alpha-univalence-R", aa, pc.inv_h_r0, aa <= pc.inv_h_r0,
                                    "J_alpha[f] in S for f in R if |alpha| <= 1/h(r0)"));
    {
        const double k = aa * pc.h_r0;
        rep.checks.push_back(make_check("j-alpha-qc-R", k, 1.0, k < 1.0,
                                        "J_alpha[f] extends k-qc with k = |alpha| h(r0)"));
    }
    if (alpha.imag() == 0.0) {
        rep.checks.push_back(make_check("j-alpha-R-preservation", aa, pc.alpha0, aa <= pc.alpha0,
                                        "J_alpha[R] in R for real alpha in [-alpha0, alpha0]"));
        rep.checks.push_back(make_check("i-alpha-R-preservation", aa, 1.0, aa <= 1.0,
                                        "I_alpha[R] in R for real alpha in [-1, 1]"));
    } else {
        rep.checks.push_back({"j-alpha-R-preservation", aa, pc.alpha0, "inconclusive",
                              "stated for real alpha only"});
        rep.checks.push_back({"i-alpha-R-preservation", aa, 1.0, "inconclusive",
                              "stated for real alpha only"});
    }
    rep.checks.push_back(make_check("i-alpha-univalence-R", aa, 0.5, aa <= 0.5,
                                    "I_alpha[f] in S for f in R if |alpha| <= 1/2"));
    {
        const double bound = aa < pc.alpha0 ? std::sin(aa * pc.beta0 * M_PI / 2.0) : 1.0;
        rep.checks.push_back(make_check("j-alpha-qc-dilatation", bound, 1.0, aa < pc.alpha0,
                                        "J_alpha[f] extends sin(|alpha| beta0 pi/2)-qc for |alpha| < alpha0"));
    }
    {
        const double bound = aa < 1.0 ? std::sin(aa * M_PI / 2.0) : 1.0;
        rep.checks.push_back(make_check("i-alpha-qc-dilatation", bound, 1.0, aa < 1.0,
                                        "I_alpha[f] extends sin(|alpha| pi/2)-qc for |alpha| < 1"));
    }

    (void)nw_ok;
    return rep;
}

std::string criteria_report_to_json(const CriteriaReport& r) {
    JsonWriter w;
    w.begin_object();
    w.key("function").raw(spec_to_json_text(r.f));
    w.key("alpha").complex_pair(r.alpha);
    w.key("min_re_fprime").number(r.min_re_fprime);
    w.key("gamma_hat").number(r.gamma_hat);
    w.key("qc_bound_sin").number(r.qc_bound);
    w.key("t_norm").number(r.t_norm);
    w.key("s_norm").number(r.s_norm);
    w.key("checks").begin_array();
    for (const auto& c : r.checks) {
        w.begin_object()
            .key("id").string(c.id)
            .key("measured").number(c.measured)
            .key("threshold").number(c.threshold)
            .key("verdict").string(c.verdict)
            .key("note").string(c.note)
            .end_object();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

// ---------------------------------------------------------------------------
// spirallike extension
// ---------------------------------------------------------------------------

double SpirallikeChain::xi(cplx logval) const {
    return (std::exp(cplx(0.0, -lambda_)) * logval).imag();
}
double SpirallikeChain::eta(cplx logval) const {
    return (std::exp(cplx(0.0, -lambda_)) * logval).real();
}

SpirallikeChain::SpirallikeChain(const FunctionSpec& fspec, double lambda, const Options& opt)
    : f_(Func::compile(fspec)), lambda_(lambda), opt_(opt) {
    if (!(lambda > -M_PI_2 && lambda < M_PI_2))
        throw DomainError("spirallike lambda must lie in (-pi/2, pi/2)");

    // spirallikeness invariant: Re(e^{-i lambda} z f'/f) > 0 on a verification grid
    if (opt_.verify) {
        double min_re = 1e300, max_arg = 0.0;
        const cplx rot = std::exp(cplx(0.0, -lambda_));
        for (int j = 0; j < opt_.verify_n_angular; ++j) {
            const double th = 2.0 * M_PI * j / opt_.verify_n_angular;
            for (int i = 0; i < opt_.verify_n_radial; ++i) {
                const double r = opt_.verify_r_max * double(i + 1) / opt_.verify_n_radial;
                const cplx z = std::polar(r, th);
                const Jet3 jet = f_.jet(z);
                if (std::abs(jet.f0) < 1e-280) throw NotSpirallike("f vanished away from the origin");
                const cplx q = rot * (z * jet.f1 / jet.f0);
                min_re = std::min(min_re, q.real());
                max_arg = std::max(max_arg, std::abs(std::arg(q)));
            }
        }
        min_re_ = min_re;
        if (!(min_re > 0.0))
            throw NotSpirallike("Re(e^{-i lambda} z f'/f) <= 0 on the verification grid");
        alpha_hat_ = 2.0 / M_PI * max_arg;
    }

    // boundary curve table: f(e^{i theta}) with a continuously unwrapped log and
    // monotone xi = Im(e^{-i lambda} log f); half-step offset dodges the usual
    // singularity at theta = 0
    const int M = opt_.table_size;
    theta_.resize(M + 1);
    logf_.resize(M + 1);
    xi_table_.resize(M + 1);
    xi_period_ = 2.0 * M_PI * std::cos(lambda_);

    cplx prev_val{};
    for (int k = 0; k <= M; ++k) {
        theta_[k] = 2.0 * M_PI * (k + 0.5) / M;
        const cplx val = f_.value(std::polar(1.0, theta_[k]));
        if (std::abs(val) < 1e-280) throw NotSpirallike("boundary value vanished");
        if (k == 0) {
            logf_[0] = std::log(val);
        } else {
            cplx ratio = val / prev_val;
            if (ratio.real() <= 0.0) {
                // refine within the gap
                cplx lg = logf_[k - 1];
                cplx pv = prev_val;
                const int refine = 64;
                bool ok = true;
                for (int s = 1; s <= refine && ok; ++s) {
                    const double th = theta_[k - 1] + (theta_[k] - theta_[k - 1]) * s / refine;
                    const cplx v = f_.value(std::polar(1.0, th));
                    const cplx rr = v / pv;
                    if (rr.real() <= 0.0) ok = false;
                    lg += std::log(rr);
                    pv = v;
                }
                if (!ok) throw NotSpirallike("boundary curve tabulation failed (no continuous extension)");
                logf_[k] = lg;
            } else {
                logf_[k] = logf_[k - 1] + std::log(ratio);
            }
        }
        xi_table_[k] = xi(logf_[k]);
        prev_val = val;
    }
    // a strictly spirallike boundary curve winds once: xi gains 2 pi cos(lambda)
    const double gain = xi_table_[M] - xi_table_[0];
    winding_ok_ = std::abs(gain - xi_period_) < 1e-6 * (1.0 + xi_period_);
    // xi must be monotone for seed interpolation
    if (winding_ok_) {
        for (int k = 0; k < M; ++k) {
            if (!(xi_table_[k + 1] >= xi_table_[k] - 1e-12)) {
                winding_ok_ = false;
                break;
            }
        }
    }
}

SpirallikeChain::Solution SpirallikeChain::extend(cplx z_exterior) const {
    if (std::abs(z_exterior) <= 1.0)
        throw DomainError("spirallike extension is defined for |z| > 1");
    if (!winding_ok_)
        throw NewtonDivergence(1e300,
                               "boundary curve does not wind (extremal map: flow spirals from "
                               "interior points never reach the boundary slit)");

    const cplx zeta = 1.0 / std::conj(z_exterior);
    const cplx w0 = f_.value(zeta);
    if (std::abs(w0) < 1e-280) throw DomainError("f(1/conj(z)) vanished");

    // bring xi(log w0) into the table window [xi_0, xi_0 + period)
    cplx L0 = std::log(w0);
    const double k = std::ceil((xi_table_[0] - xi(L0)) / xi_period_ - 1e-13);
    L0 += cplx(0.0, 2.0 * M_PI * k);
    double xw = xi(L0);
    if (xw < xi_table_[0] - 1e-9 || xw > xi_table_[0] + xi_period_ + 1e-9)
        throw SolverError("xi reduction failed");

    // seed from inverse interpolation of the monotone xi table
    const auto it = std::lower_bound(xi_table_.begin(), xi_table_.end(), xw);
    std::size_t hi = std::min<std::size_t>(xi_table_.size() - 1,
                                           std::max<std::size_t>(1, it - xi_table_.begin()));
    const std::size_t lo = hi - 1;
    const double denom = xi_table_[hi] - xi_table_[lo];
    const double frac = denom > 0.0 ? std::clamp((xw - xi_table_[lo]) / denom, 0.0, 1.0) : 0.5;
    double theta = theta_[lo] + frac * (theta_[hi] - theta_[lo]);
    cplx Ltheta = logf_[lo] + frac * (logf_[hi] - logf_[lo]);
    double t = eta(Ltheta) - eta(L0);

    // Newton on F(t, theta) = e^{i lambda} t + L0 - log f(e^{i theta})
    const cplx eil = std::exp(cplx(0.0, lambda_));
    double best_res = 1e300;
    Solution sol;
    for (int iter = 0; iter < opt_.newton_max_iters; ++iter) {
        const cplx bz = std::polar(1.0, theta);
        const Jet3 bj = f_.jet(bz);
        if (std::abs(bj.f0) < 1e-280) throw NewtonDivergence(best_res, "boundary value vanished");
        // keep the tracked log continuous as theta moves
        {
            const cplx ratio = bj.f0 / std::exp(Ltheta);
            if (ratio.real() <= 0.0)
                throw NewtonDivergence(best_res, "lost branch continuity during Newton");
            Ltheta += std::log(ratio);
        }
        const cplx F = eil * t + L0 - Ltheta;
        const double res = std::abs(F);
        if (res < best_res) {
            best_res = res;
            sol.t = t;
            sol.theta = theta;
            sol.iters = iter;
            sol.residual = res;
        }
        if (res < opt_.newton_tol * (1.0 + std::abs(L0))) break;
        // columns dF/dt = e^{i lambda}, dF/dtheta = -i e^{i theta} f'/f
        const cplx dth = -cplx(0.0, 1.0) * bz * bj.f1 / bj.f0;
        const double a11 = eil.real(), a12 = dth.real();
        const double a21 = eil.imag(), a22 = dth.imag();
        const double det = a11 * a22 - a12 * a21;
        if (std::abs(det) < 1e-300) throw NewtonDivergence(best_res, "singular Jacobian");
        const double dt = (-F.real() * a22 + F.imag() * a12) / det;
        const double dthv = (-a11 * F.imag() + a21 * F.real()) / det;
        t += dt;
        theta += dthv;
        if (!std::isfinite(t) || !std::isfinite(theta))
            throw NewtonDivergence(best_res, "iterates diverged");
    }
    if (!(best_res < 1e-9 * (1.0 + std::abs(L0))))
        throw NewtonDivergence(best_res, "no convergence within iteration budget");
    if (sol.t < -1e-6)
        throw NewtonDivergence(best_res, "matched flow time is negative");
    if (sol.t < 0.0) sol.t = 0.0;

    const cplx fb = f_.value(std::polar(1.0, sol.theta));
    sol.phi = fb * fb / w0;
    return sol;
}

ExtensionGrid extension_grid(const FunctionSpec& fspec, double lambda,
                             const ExtensionGridOptions& opt) {
    SpirallikeChain chain(fspec, lambda);
    ExtensionGrid grid;
    grid.alpha_hat = chain.alpha_hat();
    grid.k_bound = std::sin(std::min(1.0, grid.alpha_hat) * M_PI / 2.0);

    grid.points.reserve(static_cast<std::size_t>(opt.n_r) * opt.n_theta);
    for (int i = 0; i < opt.n_r; ++i) {
        const double r = 1.0 + (opt.r_out_max - 1.0) * double(i + 1) / opt.n_r;
        for (int j = 0; j < opt.n_theta; ++j) {
            const double th = 2.0 * M_PI * j / opt.n_theta;
            ExtensionCell cell;
            cell.z = std::polar(r, th);
            const double h = opt.fd_step * r;
            cell.mu_valid = (r - 1.0) > 2.0 * h;
            try {
                const auto sol = chain.extend(cell.z);
                cell.phi = sol.phi;
                cell.t = sol.t;
                cell.theta = sol.theta;
                if (cell.mu_valid) {
                    const cplx px = chain.extend(cell.z + h).phi;
                    const cplx mx = chain.extend(cell.z - h).phi;
                    const cplx py = chain.extend(cell.z + cplx(0.0, h)).phi;
                    const cplx my = chain.extend(cell.z - cplx(0.0, h)).phi;
                    const cplx dx = (px - mx) / (2.0 * h);
                    const cplx dy = (py - my) / (2.0 * h);
                    const cplx dzbar = 0.5 * (dx + cplx(0.0, 1.0) * dy);
                    const cplx dz = 0.5 * (dx - cplx(0.0, 1.0) * dy);
                    if (std::abs(dz) < 1e-300) throw EvalError("degenerate dz derivative");
                    cell.mu_abs = std::abs(dzbar / dz);
                    grid.max_mu = std::max(grid.max_mu, cell.mu_abs);
                }
                cell.ok = true;
            } catch (const SolverError&) {
                cell.ok = false;
                cell.mu_valid = false;
                ++grid.failures;
            } catch (const EvalError&) {
                cell.ok = false;
                cell.mu_valid = false;
                ++grid.failures;
            }
            grid.points.push_back(cell);
        }
    }
    grid.failure_rate = double(grid.failures) / double(grid.points.size());
    if (opt.abort_on_failures && grid.failure_rate > 0.01) {
        std::ostringstream os;
        os << "extension grid: " << grid.failures << "/" << grid.points.size()
           << " cells failed (rate " << grid.failure_rate << ", alpha_hat " << grid.alpha_hat
           << ", winding_ok " << chain.boundary_winding_ok() << ")";
        throw ExtensionGridError(os.str());
    }
    return grid;
}

double boundary_continuity_defect(const SpirallikeChain& chain, int n_theta, double rho) {
    double worst = 0.0;
    for (int j = 0; j < n_theta; ++j) {
        const double th = 2.0 * M_PI * (j + 0.5) / n_theta;
        const cplx zout = std::polar(1.0 + rho, th);
        const cplx zin = std::polar(1.0 - rho, th);
        const cplx phi = chain.extend(zout).phi;
        const cplx fv = chain.func().value(zin);
        worst = std::max(worst, std::abs(phi - fv));
    }
    return worst;
}

std::string extension_grid_csv(const ExtensionGrid& g) {
    std::string out = "x,y,u,v,mu_abs,t,theta,ok\n";
    char buf[256];
    for (const auto& c : g.points) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                      c.z.real(), c.z.imag(), c.phi.real(), c.phi.imag(),
                      c.mu_valid ? c.mu_abs : -1.0, c.t, c.theta, c.ok ? 1 : 0);
        out += buf;
    }
    return out;
}

std::string extension_grid_summary_json(const ExtensionGrid& g) {
    JsonWriter w;
    w.begin_object()
        .key("k_bound").number(g.k_bound)
        .key("alpha_hat").number(g.alpha_hat)
        .key("max_mu").number(g.max_mu)
        .key("failures").integer(g.failures)
        .key("failure_rate").number(g.failure_rate)
        .key("cells").integer(static_cast<long long>(g.points.size()))
        .end_object();
    return w.str();
}

} // namespace gftk
