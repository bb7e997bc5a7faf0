#pragma once

#include <vector>

#include "warpgeo/geometry.hpp"
#include "warpgeo/rng.hpp"
#include "warpgeo/types.hpp"

namespace warpgeo::cmp {

// Scalar comparison kit for a radial curvature bound b. c_b is the
// cotangent-type comparison function, phi_b its strictly increasing partner,
// linked by phi_b'' = phi_b' * c_b.

struct ComparisonConfig {
    double b = 0.0;
    double r = 1.0;
    ComparisonConfig(double b_, double r_) : b(b_), r(r_) { validate(); }
    void validate() const;
};

// Values of b within this of zero take the exact b = 0 branch, which avoids
// cancellation in sqrt(b)*cot(sqrt(b) t) for tiny b.
inline constexpr double kCurvatureZeroTol = 1e-14;

double c_b(double b, double t);
double phi_b(double b, double t);
double phi_b_prime(double b, double t);
double phi_b_second(double b, double t);

// |phi_b'' - phi_b' c_b| from the closed-form derivatives.
double ode_residual(double b, double t);

// Upper end of the valid t-domain (pi/(2 sqrt b) for b > 0, +inf otherwise).
double domain_sup(double b);

struct RadialSample {
    Vec point;
    double rho = 0.0;
    double curvature = 0.0;  // worst radial plane curvature at the point
};

struct RadialBoundReport {
    bool pass = false;
    double max_radial_curvature = 0.0;
    double bound = 0.0;
    int planes_checked = 0;
    std::vector<RadialSample> samples;
};

// Samples radial planes (grad rho wedge an orthogonal direction) inside the
// geodesic ball B(x0; r) and compares the observed radial sectional
// curvatures against b. Bases of dimension 1 have no planes; that reports a
// vacuous pass.
RadialBoundReport radial_bound_check(const MetricField& m, const Vec& x0, double r, double b,
                                     int samples, Rng rng, double declared_inj_radius,
                                     double tol = 1e-3);

struct HessianComparisonReport {
    bool pass = false;
    double min_orthogonal_slack = 0.0;  // min of Hess rho(X,X) - C_b(rho)|X|^2
    double max_radial_abs = 0.0;        // max |Hess rho(radial, radial)|
    int samples_checked = 0;
};

// Checks Hess rho >= C_b(rho) g on the orthogonal complement of grad rho and
// Hess rho = 0 radially, at sampled points of the ball.
HessianComparisonReport hessian_comparison_check(const MetricField& m, const Vec& x0, double r,
                                                 double b, int samples, Rng rng,
                                                 double declared_inj_radius, double tol = 1e-3);

}  // namespace warpgeo::cmp
