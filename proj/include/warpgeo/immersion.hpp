#pragma once

#include <memory>
#include <optional>

#include "warpgeo/geometry.hpp"
#include "warpgeo/types.hpp"
#include "warpgeo/warped.hpp"

namespace warpgeo {

// A parametrized immersion of an n_M-dimensional chart into an ambient
// manifold, carrying the pull-back metric. When the ambient is a warped
// product the block structure unlocks the lifted-Hessian formulas.
struct Immersion {
    int domain_dim = 0;
    ChartDomain chart;                    // chart of M
    std::function<Vec(const Vec&)> map;   // M chart -> ambient chart
    MetricField ambient;                  // ambient metric (assembled, for warped)
    std::shared_ptr<wp::WarpedProduct> warped;  // set when ambient is a warped product
    std::string name;
    FdConfig fd{1e-3, 4};  // differentiation of the map itself

    Vec at(const Vec& u) const;
    Mat dphi(const Vec& u) const;  // ambient_dim x domain_dim

    // Pull-back metric at a point; throws RankDeficient when dphi degenerates.
    Mat induced_metric(const Vec& u) const;

    // The pull-back metric as a differentiable field (wider FD step since
    // every evaluation is itself finite-difference work).
    MetricField induced_metric_field() const;

    // g^M-orthonormal tangent frame as columns of a (domain_dim) matrix of
    // chart components; deterministic (triangular Gram-Schmidt).
    Mat tangent_frame(const Vec& u) const;

    // Orthonormal basis of the normal space in ambient components.
    Mat normal_frame(const Vec& u) const;
};

// Ambient-valued second fundamental form at u on tangent vectors e, e2
// (M-chart components); the value is normal to the immersed tangent space.
TangentVector second_fundamental_form(const Immersion& imm, const Vec& u, const Vec& e,
                                      const Vec& e2);

// Trace of the second fundamental form over a g^M-orthonormal basis.
TangentVector mean_curvature_vector(const Immersion& imm, const Vec& u);

// Gradient of f = L o phi on M, via the ambient gradient of L.
Vec composed_gradient(const Immersion& imm, const ScalarField& L, const Vec& u);

// Hess^M f(e,e) via the ambient Hessian of L plus the second-fundamental-form
// correction; the independent route is geo::hessian on the induced metric.
double composed_hessian(const Immersion& imm, const ScalarField& L, const Vec& u, const Vec& e);

// Hessian on M of a fiber-lifted function, written out in horizontal and
// vertical blocks of the warped ambient.
double hessian_lift_vertical(const Immersion& imm, const ScalarField& G, const Vec& u,
                             const Vec& e);

// Same for a base-lifted function.
double hessian_lift_horizontal(const Immersion& imm, const ScalarField& F, const Vec& u,
                               const Vec& e);

// (K_M - K_ambient) of the plane (e1, e2) from the Gauss equation.
double gauss_sectional_defect(const Immersion& imm, const Vec& u, const Vec& e1, const Vec& e2);

// Radial context for splitting tangent vectors against grad rho on the base.
struct RadialContext {
    Vec x0;
    ScalarField rho;      // on the base chart
    const MetricField* base = nullptr;
    double declared_inj_radius = std::numeric_limits<double>::infinity();
};

struct TangentSplit {
    Vec hor;   // base block of dphi(e)
    Vec ver;   // fiber block
    Vec rho;   // radial part of hor
    Vec perp;  // hor minus radial
};

// dphi(e) split into horizontal/vertical and the horizontal part further
// against the radial direction grad rho.
TangentSplit split_tangent(const Immersion& imm, const RadialContext& ctx, const Vec& u,
                           const Vec& e);

// Sum of squared vertical parts of an orthonormal tangent frame, measured in
// the ambient metric (bounded by the fiber dimension).
double vertical_energy(const Immersion& imm, const Vec& u);

}  // namespace warpgeo
