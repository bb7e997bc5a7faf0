#pragma once

#include <optional>

#include "warpgeo/geometry.hpp"
#include "warpgeo/rng.hpp"
#include "warpgeo/types.hpp"
#include "warpgeo/warped.hpp"
#include "warpgeo/immersion.hpp"

namespace warpgeo::sub {

// A Riemannian submersion given by total and base metrics plus the
// projection in chart coordinates. Vertical = kernel of the projection
// differential, horizontal = its metric orthogonal complement.
struct RiemannianSubmersion {
    MetricField total;
    MetricField base;
    std::function<Vec(const Vec&)> projection;
    int fiber_dim = 0;
    std::string name;
    FdConfig proj_fd{1e-3, 4};

    int total_dim() const { return total.dim; }
    int base_dim() const { return base.dim; }

    Mat dpi(const Vec& q) const;
    Vec project(const Vec& q) const;

    // Metric-orthogonal projectors onto the vertical / horizontal spaces,
    // smooth in q (they do not depend on any kernel basis choice).
    Mat vertical_projector(const Vec& q) const;
    Mat horizontal_projector(const Vec& q) const;

    // Horizontal vector mapping to a given base vector under dpi.
    Vec horizontal_lift(const Vec& q, const Vec& base_vec) const;
};

// Warped products are submersions over their base through the first-factor
// projection.
RiemannianSubmersion from_warped(const wp::WarpedProduct& w);

struct SubmersionCheck {
    bool pass = false;
    double max_rank_defect = 0.0;      // smallest singular value shortfall
    double max_isometry_error = 0.0;   // worst |g_M(X,Y) - g_X(dpi X, dpi Y)|
    Vec witness;
};

// Rank and horizontal-isometry checks at sampled points; throws
// NotASubmersion only on rank collapse, isometry failure is reported.
SubmersionCheck verify_submersion(const RiemannianSubmersion& s, int samples, Rng rng);

// O'Neill fundamental tensors at a point, on arbitrary tangent vectors.
// Evaluated from the defining covariant-derivative formulas on extended
// fields; the result is tensorial, so the extension does not matter (and the
// tests vary it).
Vec tensor_T(const RiemannianSubmersion& s, const Vec& xi, const Vec& eta, const Vec& q);
Vec tensor_A(const RiemannianSubmersion& s, const Vec& xi, const Vec& eta, const Vec& q);

struct HorizontalCurvature {
    double total = 0.0;     // K of the horizontal plane upstairs
    double base = 0.0;      // K of the projected plane
    double a_term = 0.0;    // 3|A_X Y|^2 / gram
    double residual = 0.0;  // |total - base + a_term|
};

HorizontalCurvature horizontal_sectional_curvature(const RiemannianSubmersion& s, const Vec& q,
                                                   const Vec& X, const Vec& Y);

// Minimum sectional curvature over horizontal 2-planes, sampled over a
// region of the total space and refined.
double sec_hor_min(const RiemannianSubmersion& s, const ChartDomain& region, int budget,
                   Rng rng);

// |Hess^M F^h(X,Y) - Hess^X F(dpi X, dpi Y)| for horizontal X, Y.
double basic_hessian_check(const RiemannianSubmersion& s, const ScalarField& F, const Vec& q,
                           const Vec& X, const Vec& Y);

// Hilbert-Schmidt sum of a linear map over an orthonormal family: columns of
// `family` must be orthonormal for gram1; lengths downstream are measured by
// gram2.
double hilbert_schmidt_sum(const Mat& map, const Mat& gram1, const Mat& gram2,
                           const Mat& family);

// Hessian of F o pi o phi on an immersed M via the submersion formula
// (base Hessian + A-term + T-term + second-fundamental-form term).
double submersion_hessian_lift(const RiemannianSubmersion& s, const Immersion& imm,
                               const ScalarField& F, const Vec& u, const Vec& e);

struct TensorSups {
    double tau0 = 0.0;    // sup |T|
    double alpha0 = 0.0;  // sup |A|
    Vec tau_witness, alpha_witness;
};

// Operator-norm suprema of T and A over a region of the total space.
TensorSups tensor_sups(const RiemannianSubmersion& s, const ChartDomain& region, int budget,
                       Rng rng);

}  // namespace warpgeo::sub
