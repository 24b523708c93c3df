#ifndef GFTK_SUBORDINATION_HPP
#define GFTK_SUBORDINATION_HPP

#include <vector>

#include "gftk/funclang.hpp"
#include "gftk/norms.hpp"

namespace gftk {

// Convex hull of boundary samples of a convex dominant's range.
struct RangeHull {
    std::vector<cplx> boundary_samples; // q(r_max e^{i theta_j})
    std::vector<cplx> hull;             // counterclockwise vertices
    bool convex_ok = true;              // samples were in convex position (up to collinearity)
};

RangeHull build_range_hull(const FunctionSpec& q, int n_samples = 4096, double r_max = 1.0 - 1e-5);
bool hull_contains(const RangeHull& hull, cplx w, double tol = 1e-10);
// signed distance to the hull boundary (positive inside)
double hull_margin(const RangeHull& hull, cplx w);

// Range-containment + center-match test: necessary condition for f ~< q when q
// is convex. f is sampled on a radial-angular grid with r <= sample_r_max
// (series-backed f should stay <= 0.97 where truncation is honest).
struct SubordinationResult {
    bool subordinate;
    cplx worst_point;   // f-sample with the smallest hull margin
    double worst_margin;
    cplx center_f, center_q;
    bool convex_ok;
};
SubordinationResult subordination_check(const FunctionSpec& f, const FunctionSpec& q_convex,
                                        int n_samples, double sample_r_max = 0.97);

// Random member of { f : Re f' > 0 } built by the half-plane composition
// f' = (1 + z b)/(1 - z b) with sum |b_n| <= 1; f = integral of f'.
PowerSeries random_R_member(unsigned seed, int degree, int order = kDefaultTruncation);

// Same construction, exposing the exact rational form of f' (valid on the whole
// disk, unlike the truncated series) next to the series carrier.
struct RandomRMember {
    PowerSeries f;            // integrated series, c1 = 1
    FunctionSpec fprime_expr; // (1 + z b)/(1 - z b) as an expression
    std::vector<cplx> b;      // the generator polynomial
};
RandomRMember make_R_member(const std::vector<cplx>& b, int order = kDefaultTruncation);
RandomRMember random_R_member_exact(unsigned seed, int degree, int order = kDefaultTruncation);

// Random self-map of the disk (scaled polynomial). When require_lu is set the
// construction keeps omega' zero-free (|c1| dominates the higher coefficients).
FunctionSpec random_self_map(unsigned seed, int degree, bool require_lu = false);

// (|omega'(z)|/(1-|omega(z)|^2), 1/(1-|z|^2)); first <= second by Schwarz-Pick.
std::pair<double, double> schwarz_pick_check(const FunctionSpec& omega, cplx z);

// Number of zeros of f' inside |z| < radius by the argument principle
// (winding of f' along the circle); used to detect infinite T/S norms.
int count_derivative_zeros(const Func& f, double radius, int samples = 8192);

// ||S_f|| vs ||S_g|| + ||T_omega|| ||T_g|| for f' = (g' o omega) omega'.
// Norms are +inf when omega' (or g' o omega reparametrized) vanishes.
struct PropSchwarzResult {
    double lhs, rhs;
    double s_g, t_g, t_omega;
    bool omega_critical; // omega' has zeros in the disk -> both sides infinite
};
PropSchwarzResult prop_schwarz_harness(const FunctionSpec& g, const FunctionSpec& omega,
                                       const NormOptions& opts = {});

} // namespace gftk

#endif
