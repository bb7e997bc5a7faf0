#pragma once

#include "warpgeo/geometry.hpp"
#include "warpgeo/types.hpp"

namespace warpgeo::wp {

// Warped product of a base and a fiber with warping function psi on the
// base: the product metric scales the fiber block by psi^2. Base coordinates
// always come first, fiber coordinates second.

enum class FieldKind { HBasic, VBasic };

// A vector field living on one factor only ("does not depend on the other
// variable"); constant-component fields cover the pointwise operations.
struct BasicField {
    FieldKind kind = FieldKind::HBasic;
    VectorField field;  // components on the factor chart

    static BasicField constant(FieldKind kind, const Vec& comps);
};

// Horizontal/vertical blocks of a product tangent vector.
struct SplitVector {
    Vec hor;  // base block
    Vec ver;  // fiber block

    Vec joined() const {
        Vec out(hor.size() + ver.size());
        out << hor, ver;
        return out;
    }
};

struct WarpedProduct {
    MetricField base;
    MetricField fiber;
    ScalarField psi;  // on the base chart, strictly positive
    std::string name;

    int base_dim() const { return base.dim; }
    int fiber_dim() const { return fiber.dim; }
    int total_dim() const { return base.dim + fiber.dim; }

    ChartDomain product_chart() const { return ChartDomain::product(base.chart, fiber.chart); }

    double psi_at(const Vec& x) const;       // throws NonpositiveWarp
    Vec grad_psi(const Vec& x) const;        // base-metric gradient
    Vec grad_psi_over_psi(const Vec& x) const;
    double dpsi_along(const Vec& x, const Vec& X) const;  // X(psi)

    Vec base_part(const Vec& q) const { return q.head(base.dim); }
    Vec fiber_part(const Vec& q) const { return q.tail(fiber.dim); }
    SplitVector split(const Vec& xi) const {
        return {xi.head(base.dim), xi.tail(fiber.dim)};
    }

    // g^M(xi, eta) at the product point q.
    double inner(const Vec& q, const Vec& xi, const Vec& eta) const;
};

// The product metric as a plain MetricField over the product chart.
MetricField assemble_metric(const WarpedProduct& w);

// Covariant derivative of an h-basic field along a v-basic direction
// (equivalently the other order); the result is vertical.
SplitVector connection_mixed(const WarpedProduct& w, const Vec& X_basic, const Vec& V_basic,
                             const Vec& q);

// Covariant derivative of one v-basic field along another: the fiber
// connection plus a horizontal correction proportional to grad psi.
SplitVector connection_vertical(const WarpedProduct& w, const BasicField& V, const BasicField& W,
                                const Vec& q);
SplitVector connection_vertical(const WarpedProduct& w, const Vec& V, const Vec& W, const Vec& q);

// Second fundamental form of the fiber through q, evaluated on vertical
// vectors; horizontal-valued, zero at critical points of psi.
TangentVector fiber_second_fundamental_form(const WarpedProduct& w, const Vec& V, const Vec& W,
                                            const Vec& q);

// Mean curvature vector of the fiber through q (trace of the above).
TangentVector fiber_mean_curvature(const WarpedProduct& w, const Vec& q);

// Divergence of a basic field on the product.
double divergence_lift(const WarpedProduct& w, const BasicField& field, const Vec& q);

enum class LiftKind { Base, Fiber };

// Gradient on the product of a function lifted from one factor.
SplitVector lift_gradient(const WarpedProduct& w, const ScalarField& fn, LiftKind kind,
                          const Vec& q);

// Hessian on the product of a lifted function, evaluated on a pair of
// split vectors (all six block cases combined bilinearly).
double lift_hessian(const WarpedProduct& w, const ScalarField& fn, LiftKind kind,
                    const SplitVector& xi, const SplitVector& eta, const Vec& q);

// Laplacian on the product of a lifted function.
double lift_laplacian(const WarpedProduct& w, const ScalarField& fn, LiftKind kind, const Vec& q);

}  // namespace warpgeo::wp
