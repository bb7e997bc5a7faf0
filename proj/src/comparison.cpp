#include "warpgeo/comparison.hpp"

#include <cmath>

namespace warpgeo::cmp {

void ComparisonConfig::validate() const {
    if (!(r > 0)) throw DomainError("comparison radius must be positive");
    if (b > kCurvatureZeroTol && !(r < M_PI / (2.0 * std::sqrt(b)) - 1e-12))
        throw DomainError("for b > 0 the radius must satisfy r < pi/(2 sqrt(b))");
}

double domain_sup(double b) {
    return b > kCurvatureZeroTol ? M_PI / (2.0 * std::sqrt(b))
                                 : std::numeric_limits<double>::infinity();
}

namespace {
void require_in_domain(double b, double t, bool allow_zero) {
    if (t < 0 || (!allow_zero && t == 0)) throw DomainError("t outside comparison domain");
    if (b > kCurvatureZeroTol && !(t < M_PI / (2.0 * std::sqrt(b))))
        throw DomainError("t outside (0, pi/(2 sqrt(b)))");
}
}  // namespace

double c_b(double b, double t) {
    require_in_domain(b, t, false);
    if (b > kCurvatureZeroTol) {
        const double sb = std::sqrt(b);
        return sb * std::cos(sb * t) / std::sin(sb * t);
    }
    if (b < -kCurvatureZeroTol) {
        const double sb = std::sqrt(-b);
        return sb * std::cosh(sb * t) / std::sinh(sb * t);
    }
    return 1.0 / t;
}

double phi_b(double b, double t) {
    require_in_domain(b, t, true);
    if (b > kCurvatureZeroTol) return 1.0 - std::cos(std::sqrt(b) * t);
    if (b < -kCurvatureZeroTol) return std::cosh(std::sqrt(-b) * t);
    return t * t;
}

double phi_b_prime(double b, double t) {
    require_in_domain(b, t, true);
    if (b > kCurvatureZeroTol) {
        const double sb = std::sqrt(b);
        return sb * std::sin(sb * t);
    }
    if (b < -kCurvatureZeroTol) {
        const double sb = std::sqrt(-b);
        return sb * std::sinh(sb * t);
    }
    return 2.0 * t;
}

double phi_b_second(double b, double t) {
    require_in_domain(b, t, true);
    if (b > kCurvatureZeroTol) return b * std::cos(std::sqrt(b) * t);
    if (b < -kCurvatureZeroTol) return -b * std::cosh(std::sqrt(-b) * t);
    return 2.0;
}

double ode_residual(double b, double t) {
    return std::abs(phi_b_second(b, t) - phi_b_prime(b, t) * c_b(b, t));
}

namespace {

struct BallSample {
    Vec point;
    Vec radial;  // unit grad rho at the point, from the shot velocity
    double rho;
};

// Shoot unit-speed geodesics from x0 to random radii; the arrival velocity
// is grad rho there.
std::vector<BallSample> sample_ball(const MetricField& m, const Vec& x0, double r, int count,
                                    Rng& rng, double declared_inj_radius) {
    if (r > declared_inj_radius)
        throw OutsideDeclaredInjRadius("ball radius exceeds declared injectivity radius");
    Mat g0 = m.eval(x0);
    std::vector<BallSample> out;
    int failures = 0;
    while (static_cast<int>(out.size()) < count && failures < 20 * count) {
        Vec dir = rng.normal_vec(m.dim);
        double n = std::sqrt(dir.dot(g0 * dir));
        if (n < 1e-12) continue;
        dir /= n;
        const double t = rng.uniform(0.1 * r, r);
        try {
            auto st = geo::geodesic_shoot(m, x0, dir, t);
            out.push_back({st.position, st.velocity, t});
        } catch (const LeftChart&) {
            ++failures;
        }
    }
    if (static_cast<int>(out.size()) < count)
        throw NoConvergence("could not sample the geodesic ball inside the chart");
    return out;
}

}  // namespace

RadialBoundReport radial_bound_check(const MetricField& m, const Vec& x0, double r, double b,
                                     int samples, Rng rng, double declared_inj_radius,
                                     double tol) {
    RadialBoundReport rep;
    rep.bound = b;
    if (m.dim < 2) {  // no 2-planes in a 1-dimensional base
        rep.pass = true;
        rep.max_radial_curvature = -std::numeric_limits<double>::infinity();
        return rep;
    }
    auto pts = sample_ball(m, x0, r, samples, rng, declared_inj_radius);
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& s : pts) {
        Mat g = m.eval(s.point);
        Tensor4 riem = geo::riemann(m, s.point);
        // complete grad rho to an orthonormal frame and take radial planes
        Mat frame(m.dim, m.dim);
        frame.col(0) = s.radial;
        int col = 1;
        for (int i = 0; i < m.dim && col < m.dim; ++i) {
            Vec cand = Vec::Unit(m.dim, i);
            Mat trial(m.dim, col + 1);
            trial.leftCols(col) = frame.leftCols(col);
            trial.col(col) = cand;
            try {
                frame.leftCols(col + 1) = geo::orthonormalize(g, trial);
                ++col;
            } catch (const DegeneratePlane&) {
            }
        }
        for (int i = 1; i < col; ++i) {
            const double K = geo::sectional_curvature(riem, g, frame.col(0), frame.col(i));
            ++rep.planes_checked;
            if (K > worst) worst = K;
            rep.samples.push_back({s.point, s.rho, K});
        }
    }
    rep.max_radial_curvature = worst;
    rep.pass = worst <= b + tol;
    return rep;
}

HessianComparisonReport hessian_comparison_check(const MetricField& m, const Vec& x0, double r,
                                                 double b, int samples, Rng rng,
                                                 double declared_inj_radius, double tol) {
    HessianComparisonReport rep;
    geo::DistanceOptions dopt;
    dopt.declared_inj_radius = declared_inj_radius;
    ScalarField rho = geo::distance_field(m, x0, dopt);
    auto pts = sample_ball(m, x0, r, samples, rng, declared_inj_radius);

    double min_slack = std::numeric_limits<double>::infinity();
    double max_radial = 0.0;
    for (const auto& s : pts) {
        Mat g = m.eval(s.point);
        Mat hess = geo::hessian(m, rho, s.point);
        const double cb = c_b(b, s.rho);

        max_radial = std::max(max_radial, std::abs(s.radial.dot(hess * s.radial)));
        if (m.dim >= 2) {
            Mat frame(m.dim, m.dim);
            frame.col(0) = s.radial;
            int col = 1;
            for (int i = 0; i < m.dim && col < m.dim; ++i) {
                Vec cand = Vec::Unit(m.dim, i);
                Mat trial(m.dim, col + 1);
                trial.leftCols(col) = frame.leftCols(col);
                trial.col(col) = cand;
                try {
                    frame.leftCols(col + 1) = geo::orthonormalize(g, trial);
                    ++col;
                } catch (const DegeneratePlane&) {
                }
            }
            for (int i = 1; i < col; ++i) {
                const Vec X = frame.col(i);  // unit, orthogonal to grad rho
                const double slack = X.dot(hess * X) - cb;
                min_slack = std::min(min_slack, slack);
            }
        }
        ++rep.samples_checked;
    }
    rep.min_orthogonal_slack = (rep.samples_checked && m.dim >= 2) ? min_slack : 0.0;
    rep.max_radial_abs = max_radial;
    rep.pass = rep.min_orthogonal_slack >= -tol && max_radial < tol;
    return rep;
}

}  // namespace warpgeo::cmp
