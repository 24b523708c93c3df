#ifndef GFTK_NORMS_HPP
#define GFTK_NORMS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gftk/funclang.hpp"
#include "gftk/transforms.hpp"

namespace gftk {

enum class FieldKind { PreSchwarzian, Schwarzian };

cplx pre_schwarzian(const Func& f, cplx z); // f''/f'
cplx schwarzian(const Func& f, cplx z);     // T' - T^2/2

struct DerivativeField {
    FunctionSpec f;
    FieldKind kind = FieldKind::PreSchwarzian;
    // when set, the field belongs to the transformed function J_alpha[f]/I_alpha[f]
    std::optional<TransformOp> transform;
    cplx alpha{1.0, 0.0};
};

struct NormOptions {
    int n_radial = 400;   // Chebyshev-spaced, denser near r_max
    int n_angular = 720;
    double r_max = 0.9999;
    int refine_iters = 60;
};

struct NormResult {
    double value = 0.0;  // +inf when the weighted field exceeded 1e12 (non-LU input)
    cplx argmax{};
    NormOptions grid;
    bool refined = false;
    long skipped_points = 0; // CriticalPoint evaluations skipped during the scan
    bool infinite() const;
};

// Generic target: |field(z)| weighted by (1-|z|^2)^weight_power. begin_ray, when
// set, lets evaluators precompute along a fixed-angle ray (cumulative quadrature).
struct NormTarget {
    std::function<cplx(cplx)> field;
    int weight_power = 1;
    std::function<void(double theta, const std::vector<double>& radii)> begin_ray;
};

NormResult norm_search(const NormTarget& target, const NormOptions& opts);
NormResult norm(const DerivativeField& field, const NormOptions& opts = {});

// (||T_{J_alpha[f]}||, |alpha| * ||T_{J[f]}||), computed independently.
std::pair<double, double> norm_scaling_check(const FunctionSpec& f, cplx alpha,
                                             const NormOptions& opts = {});

std::string norm_result_to_json(const NormResult& r);

} // namespace gftk

#endif
