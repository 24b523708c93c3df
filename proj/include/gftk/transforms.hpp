#ifndef GFTK_TRANSFORMS_HPP
#define GFTK_TRANSFORMS_HPP

#include "gftk/funclang.hpp"
#include "gftk/power_series.hpp"
#include "gftk/quadrature.hpp"

namespace gftk {

enum class TransformOp { JAlpha, IAlpha, Alexander };

enum class Representation { Series, Pointwise };

struct TransformRequest {
    FunctionSpec f;
    cplx alpha{1.0, 0.0};
    TransformOp op = TransformOp::JAlpha;
    Representation representation = Representation::Pointwise;
};

// J_alpha[f] = int_0^z (f(u)/u)^alpha du on normalized series (c0 = 0, c1 = 1).
PowerSeries j_alpha_series(const PowerSeries& f, cplx alpha, int N);
// I_alpha[f] = int_0^z (f'(u))^alpha du.
PowerSeries i_alpha_series(const PowerSeries& f, cplx alpha, int N);
// Alexander transform J[f] = J_1[f].
PowerSeries alexander_series(const PowerSeries& f, int N);

// Pointwise value by branch-tracked Gauss-Legendre quadrature along [0, z].
// The integrand's log is continued from 0 at u = 0, honoring the branch
// normalization (f/z)^alpha = 1 resp. (f')^alpha = 1 at the origin.
cplx transform_pointwise(const TransformRequest& req, cplx z);
cplx transform_pointwise(TransformOp op, const Func& f, cplx alpha, cplx z,
                         const PowerIntegralOptions& opt = {});

// Hallenbeck-Ruscheweyh dominant: gamma z^-gamma int_0^z u^{gamma-1} q(u) du,
// computed termwise as gamma q_n / (gamma + n). Needs Re gamma > 0, q(0) = 1.
PowerSeries hr_dominant(const FunctionSpec& q, cplx gamma, int N);

// Derivative data of g = J_alpha[f] or I_alpha[f] assembled from f's Jet3:
//   J: g'/g-type fields from (z f' - f)/(z f);  I: from f''/f'.
// Branch-free closed forms -- suitable for dense norm grids.
struct TransformedField {
    TransformOp op;
    Func f;
    cplx alpha;

    cplx pre_schwarzian(cplx z) const;  // T_g(z)
    cplx schwarzian(cplx z) const;      // S_g(z)
};

} // namespace gftk

#endif
