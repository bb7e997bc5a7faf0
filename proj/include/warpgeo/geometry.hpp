#pragma once

#include <optional>

#include "warpgeo/tensor.hpp"
#include "warpgeo/types.hpp"

namespace warpgeo::geo {

// Chart-based Riemannian calculus built on finite differences of the metric.
// Everything here is a pure function of its inputs.

// First- and second-order data of a metric at a point.
struct MetricJet {
    Mat g;
    Mat g_inv;
    std::vector<Mat> dg;                // dg[i] = d g / d x_i
    std::vector<std::vector<Mat>> d2g;  // d2g[i][j], filled when with_second
};
MetricJet metric_jet(const MetricField& m, const Vec& p, bool with_second);

// Levi-Civita connection coefficients, gamma(k,i,j) = Gamma^k_{ij}.
Tensor3 christoffel(const MetricField& m, const Vec& p);
Tensor3 christoffel(const MetricJet& jet);

// Covariant curvature tensor, riem(a,b,c,d) = g(R(e_c,e_d) e_b, e_a); the
// index order is the one in which riem(i,j,i,j) of an orthonormal pair is the
// sectional curvature and riem(i,j,k,l) = -riem(j,i,k,l).
Tensor4 riemann(const MetricField& m, const Vec& p);

double sectional_curvature(const MetricField& m, const Vec& p, const Vec& u, const Vec& v);
double sectional_curvature(const Tensor4& riem, const Mat& g, const Vec& u, const Vec& v);

Mat ricci(const MetricField& m, const Vec& p);
double scalar_curvature(const MetricField& m, const Vec& p);

// Gradient (index raised), covariant Hessian, Laplace-Beltrami.
Vec gradient(const MetricField& m, const ScalarField& f, const Vec& p);
Mat hessian(const MetricField& m, const ScalarField& f, const Vec& p);
double laplacian(const MetricField& m, const ScalarField& f, const Vec& p);

// Covariant derivative of a vector field along a direction at p.
Vec covariant_derivative(const MetricField& m, const VectorField& field, const Vec& direction,
                         const Vec& p);

// Divergence of a vector field.
double divergence(const MetricField& m, const VectorField& field, const Vec& p);

struct GeodesicState {
    Vec position;
    Vec velocity;
};

struct ShootOptions {
    double step_arclength = 2e-3;  // RK4 step measured in arc length
    int max_steps = 2'000'000;
};

// Integrate the geodesic with initial data (p, v) for parameter time t.
GeodesicState geodesic_shoot(const MetricField& m, const Vec& p, const Vec& v, double t,
                             const ShootOptions& opts = {});

struct DistanceOptions {
    bool use_exact_if_available = true;
    double tol = 1e-11;
    int max_newton_iter = 60;
    int restarts = 8;
    uint64_t seed = 17;
    double declared_inj_radius = std::numeric_limits<double>::infinity();
};

// Geodesic distance inside the declared injectivity radius, via the metric's
// closed form when present, otherwise by a shooting boundary-value solve
// started from the coordinate chord.
double distance(const MetricField& m, const Vec& x0, const Vec& x,
                const DistanceOptions& opts = {});

// The initial velocity solving exp_{x0}(v) = x in parameter time 1 (shooting
// solve; this is what distance() uses under the hood).
Vec log_map(const MetricField& m, const Vec& x0, const Vec& x, const DistanceOptions& opts = {});

// Distance-to-basepoint as a ScalarField ready for differentiation. The
// finite-difference step is chosen by whether the metric has a closed-form
// distance (exact evaluations) or goes through the shooting solver (noisy).
ScalarField distance_field(const MetricField& m, const Vec& x0, const DistanceOptions& opts = {});

// Gram-Schmidt against the metric at p; columns of `vectors` are replaced by
// an orthonormal family spanning the same flag. Throws DegeneratePlane when
// the input is numerically dependent.
Mat orthonormalize(const Mat& g, const Mat& vectors);

}  // namespace warpgeo::geo
