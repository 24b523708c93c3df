#ifndef GFTK_CONSTANTS_HPP
#define GFTK_CONSTANTS_HPP

#include <string>

#include "gftk/funclang.hpp"
#include "gftk/power_series.hpp"

namespace gftk {

// Named constants of the sharp-bound theorems, all reproduced by 1-D
// root-finding / optimization rather than hard-coding.
struct PaperConstants {
    double r0 = 0.0;         // argmax of h on (0,1), root of the quintic-log equation
    double h_r0 = 0.0;       // h(r0)
    double inv_h_r0 = 0.0;   // 1/h(r0)
    double theta0 = 0.0;     // argmax of arg q(e^{i theta}) on (pole_theta, pi)
    double beta0 = 0.0;      // (2/pi) * arg q(e^{i theta0})
    double alpha0 = 0.0;     // 1/beta0
    double pole_theta = 0.0; // zero of cos(theta) + 2 log(2 sin(theta/2))
    cplx q_at_theta0{};      // q(e^{i theta0}), for the literal pi/(2 q) reading
};

// Reference six-decimal values the computation is checked against.
struct ReferenceConstants {
    double r0 = 0.329423;
    double h_r0 = 1.055681;
    double inv_h_r0 = 0.947255;
    double theta0 = 1.141377;
    double beta0 = 0.580356;
    double alpha0 = 1.723078;
};

double h(double r); // -(1+r)^2/(r + 2 log(1-r)) - (1-r^2)/r on (0,1)
double solve_r0();
double varsigma(double theta);
double solve_pole_theta();
// arg q(e^{i theta}) via atan2 of -e^{i theta} - 2 log(2 sin(theta/2)) - i(theta - pi),
// minus theta; continuous on (0, pi], odd-extended to (pi, 2 pi).
double arg_q_boundary(double theta);
// (theta0, beta0, alpha0); cross-checks the varsigma root characterization.
struct Theta0Solution {
    double theta0, beta0, alpha0;
    double root_theta0;          // root of varsigma' - varsigma^2 - 1 right of the pole
    double characterization_gap; // |theta0 - root_theta0|
};
Theta0Solution solve_theta0_beta0_alpha0();

PaperConstants compute_paper_constants();

// true iff |arg f(z)| < beta*pi/2 on a radial-angular grid (r <= r_max);
// returns the worst sampled point.
struct SectorCheck {
    bool contained;
    cplx worst_point;
    double max_abs_arg;
};
SectorCheck sector_containment_check(const FunctionSpec& f, double beta, int n_samples,
                                     double r_max = 0.9999);

// g(z) = 1 + ((1+z)/(1-z)) * (z/(z + 2 log(1-z))): all coefficients beyond the
// constant term are nonpositive; carrier of the real-axis reduction.
PowerSeries g_series(int order);
cplx g_value(cplx z);

std::string constants_report_json(const PaperConstants& c);

} // namespace gftk

#endif
