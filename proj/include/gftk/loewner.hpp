#ifndef GFTK_LOEWNER_HPP
#define GFTK_LOEWNER_HPP

#include <optional>
#include <string>
#include <vector>

#include "gftk/funclang.hpp"
#include "gftk/norms.hpp"

namespace gftk {

// Herglotz function of the class-R chain f_t = f + t z:  p = 1/(f'(z) + t).
cplx herglotz_of_chain_R(const Func& f, cplx z, double t);
cplx herglotz_of_chain_R(const FunctionSpec& f, cplx z, double t);

double becker_dilatation(cplx p);          // |(1-p)/(1+p)|
double betker_dilatation(cplx p, cplx q);  // |(p - conj(q))/(p + q)|

// ---------------------------------------------------------------------------
// Criteria report card
// ---------------------------------------------------------------------------
struct CriterionCheck {
    std::string id;
    double measured = 0.0;
    double threshold = 0.0;
    std::string verdict; // "pass" | "fail" | "inconclusive"
    std::string note;
};

struct CriteriaReport {
    FunctionSpec f;
    cplx alpha;
    double min_re_fprime = 0.0;
    double gamma_hat = 0.0; // (2/pi) max |arg f'| (argument tracked along rays)
    double qc_bound = 0.0;  // sin(gamma_hat pi / 2)
    double t_norm = 0.0;
    double s_norm = 0.0;
    std::vector<CriterionCheck> checks;
};

CriteriaReport criteria_report(const FunctionSpec& f, cplx alpha,
                               const NormOptions& opts = {});
std::string criteria_report_to_json(const CriteriaReport& r);

// max over the grid of |Im(alpha log w(z))| where w = f' (I-route) or f/z
// (J-route) and the log is tracked continuously along each ray from w(0) = 1.
double tracked_max_abs_arg(const Func& f, std::optional<TransformOp> op, cplx alpha,
                           int n_radial = 200, int n_angular = 360, double r_max = 0.9999);

// ---------------------------------------------------------------------------
// Explicit quasiconformal extension of a lambda-spirallike map:
//   Phi(z) = f(e^{i theta})^2 / f(1/conj(z)),  |z| > 1,
// where (t >= 0, theta) solve e^{e^{i lambda} t} f(1/conj(z)) = f(e^{i theta}).
// ---------------------------------------------------------------------------
struct SpirallikeOptions {
    int verify_n_radial = 48;
    int verify_n_angular = 240;
    double verify_r_max = 0.999;
    int table_size = 4096;
    double newton_tol = 1e-12;
    int newton_max_iters = 30;
    bool verify = true;
};

class SpirallikeChain {
  public:
    using Options = SpirallikeOptions;

    SpirallikeChain(const FunctionSpec& f, double lambda, const Options& opt = {});

    struct Solution {
        cplx phi;
        double t = 0.0;
        double theta = 0.0;
        int iters = 0;
        double residual = 0.0;
    };
    // throws NewtonDivergence when the flow from f(1/conj(z)) fails to meet the
    // boundary curve (degenerate extremal maps); DomainError for |z| <= 1
    Solution extend(cplx z_exterior) const;

    double lambda() const { return lambda_; }
    double alpha_hat() const { return alpha_hat_; } // measured sector exponent
    double min_spirallike_re() const { return min_re_; }
    bool boundary_winding_ok() const { return winding_ok_; }
    const Func& func() const { return f_; }

  private:
    double xi(cplx logval) const; // Im(e^{-i lambda} log w): spiral invariant
    double eta(cplx logval) const; // Re(e^{-i lambda} log w): flow-time coordinate

    Func f_;
    double lambda_ = 0.0;
    Options opt_;
    std::vector<double> theta_, xi_table_;
    std::vector<cplx> logf_;
    double xi_period_ = 0.0;
    double alpha_hat_ = 0.0;
    double min_re_ = 0.0;
    bool winding_ok_ = true;
};

struct ExtensionGridOptions {
    double r_out_max = 3.0;
    int n_r = 50;
    int n_theta = 180;
    double fd_step = 1e-4; // relative to |z|
    bool abort_on_failures = true; // > 1% Newton failures -> ExtensionGridError
};

struct ExtensionCell {
    cplx z, phi;
    double mu_abs = 0.0;
    double t = 0.0, theta = 0.0;
    bool ok = false;
    bool mu_valid = false; // near-boundary cells are excluded from mu statistics
};

struct ExtensionGrid {
    std::vector<ExtensionCell> points;
    double alpha_hat = 0.0;
    double k_bound = 0.0; // sin(pi alpha_hat / 2)
    double max_mu = 0.0;  // over ok cells with valid mu
    long failures = 0;
    double failure_rate = 0.0;
};

ExtensionGrid extension_grid(const FunctionSpec& f, double lambda,
                             const ExtensionGridOptions& opt = {});

// max over theta of |Phi((1+rho) e^{i theta}) - f((1-rho) e^{i theta})|
double boundary_continuity_defect(const SpirallikeChain& chain, int n_theta, double rho);

std::string extension_grid_csv(const ExtensionGrid& g);        // x,y,u,v,mu_abs,t,theta,ok
std::string extension_grid_summary_json(const ExtensionGrid& g);

} // namespace gftk

#endif
