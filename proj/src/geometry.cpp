#include "warpgeo/geometry.hpp"

#include <cmath>

#include "warpgeo/fd.hpp"
#include "warpgeo/rng.hpp"

namespace warpgeo::geo {

MetricJet metric_jet(const MetricField& m, const Vec& p, bool with_second) {
    MetricJet jet;
    jet.g = m.eval(p);
    jet.g_inv = jet.g.inverse();
    auto eval = [&](const Vec& q) { return m.eval(q); };
    const int n = m.dim;
    jet.dg.resize(n);
    for (int i = 0; i < n; ++i) jet.dg[i] = fd::partial(eval, p, i, m.fd);
    if (with_second) {
        jet.d2g.assign(n, std::vector<Mat>(n));
        for (int i = 0; i < n; ++i) {
            jet.d2g[i][i] = fd::second_pure(eval, p, i, m.fd);
            for (int j = i + 1; j < n; ++j)
                jet.d2g[i][j] = jet.d2g[j][i] = fd::second_mixed(eval, p, i, j, m.fd);
        }
    }
    return jet;
}

Tensor3 christoffel(const MetricJet& jet) {
    const int n = static_cast<int>(jet.g.rows());
    Tensor3 gamma(n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                double s = 0.0;
                for (int l = 0; l < n; ++l)
                    s += jet.g_inv(k, l) *
                         (jet.dg[i](j, l) + jet.dg[j](i, l) - jet.dg[l](i, j));
                gamma(k, i, j) = gamma(k, j, i) = 0.5 * s;
            }
    return gamma;
}

Tensor3 christoffel(const MetricField& m, const Vec& p) {
    return christoffel(metric_jet(m, p, false));
}

namespace {

// dGamma(m,k,i,j) = d_m Gamma^k_{ij}, from the metric jet.
Tensor4 christoffel_derivative(const MetricJet& jet) {
    const int n = static_cast<int>(jet.g.rows());
    Tensor4 dgamma(n);
    // d_m g^{kl} = -g^{ka} (d_m g_{ab}) g^{bl}
    std::vector<Mat> dginv(n);
    for (int midx = 0; midx < n; ++midx)
        dginv[midx] = -jet.g_inv * jet.dg[midx] * jet.g_inv;
    for (int mi = 0; mi < n; ++mi)
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    double s = 0.0;
                    for (int l = 0; l < n; ++l) {
                        s += dginv[mi](k, l) *
                             (jet.dg[i](j, l) + jet.dg[j](i, l) - jet.dg[l](i, j));
                        s += jet.g_inv(k, l) * (jet.d2g[mi][i](j, l) + jet.d2g[mi][j](i, l) -
                                                jet.d2g[mi][l](i, j));
                    }
                    dgamma(mi, k, i, j) = 0.5 * s;
                    dgamma(mi, k, j, i) = 0.5 * s;
                }
    return dgamma;
}

}  // namespace

Tensor4 riemann(const MetricField& m, const Vec& p) {
    MetricJet jet = metric_jet(m, p, true);
    Tensor3 gamma = christoffel(jet);
    Tensor4 dgamma = christoffel_derivative(jet);
    const int n = m.dim;

    // R^e_{bcd} = d_c Gamma^e_{db} - d_d Gamma^e_{cb}
    //             + Gamma^e_{cf} Gamma^f_{db} - Gamma^e_{df} Gamma^f_{cb}
    Tensor4 up(n);
    for (int e = 0; e < n; ++e)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    double s = dgamma(c, e, d, b) - dgamma(d, e, c, b);
                    for (int f = 0; f < n; ++f)
                        s += gamma(e, c, f) * gamma(f, d, b) - gamma(e, d, f) * gamma(f, c, b);
                    up(e, b, c, d) = s;
                }

    Tensor4 low(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    double s = 0.0;
                    for (int e = 0; e < n; ++e) s += jet.g(a, e) * up(e, b, c, d);
                    low(a, b, c, d) = s;
                }
    return low;
}

double sectional_curvature(const Tensor4& riem, const Mat& g, const Vec& u, const Vec& v) {
    const int n = static_cast<int>(g.rows());
    const double uu = u.dot(g * u), vv = v.dot(g * v), uv = u.dot(g * v);
    const double gram = uu * vv - uv * uv;
    if (gram < 1e-12 * std::max(1.0, uu * vv))
        throw DegeneratePlane("sectional curvature of a degenerate plane");
    double r = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (u[a] == 0.0 && v[a] == 0.0) continue;
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    r += riem(a, b, c, d) * u[a] * v[b] * u[c] * v[d];
        }
    return r / gram;
}

double sectional_curvature(const MetricField& m, const Vec& p, const Vec& u, const Vec& v) {
    return sectional_curvature(riemann(m, p), m.eval(p), u, v);
}

Mat ricci(const MetricField& m, const Vec& p) {
    Tensor4 riem = riemann(m, p);
    Mat ginv = m.inverse_at(p);
    const int n = m.dim;
    // Ric_{bd} = g^{ac} R_{abcd}
    Mat ric = Mat::Zero(n, n);
    for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d) {
            double s = 0.0;
            for (int a = 0; a < n; ++a)
                for (int c = 0; c < n; ++c) s += ginv(a, c) * riem(a, b, c, d);
            ric(b, d) = s;
        }
    return ric;
}

double scalar_curvature(const MetricField& m, const Vec& p) {
    Mat ric = ricci(m, p);
    Mat ginv = m.inverse_at(p);
    return (ginv * ric).trace();
}

Vec gradient(const MetricField& m, const ScalarField& f, const Vec& p) {
    auto eval = [&](const Vec& q) { return f(q); };
    Vec df = fd::gradient(eval, p, f.fd);
    return m.inverse_at(p) * df;
}

Mat hessian(const MetricField& m, const ScalarField& f, const Vec& p) {
    auto eval = [&](const Vec& q) { return f(q); };
    Vec df = fd::gradient(eval, p, f.fd);
    Mat d2f = fd::hessian(eval, p, f.fd);
    Tensor3 gamma = christoffel(m, p);
    const int n = m.dim;
    Mat h(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double s = d2f(i, j);
            for (int k = 0; k < n; ++k) s -= gamma(k, i, j) * df[k];
            h(i, j) = h(j, i) = s;
        }
    return h;
}

double laplacian(const MetricField& m, const ScalarField& f, const Vec& p) {
    return (m.inverse_at(p) * hessian(m, f, p)).trace();
}

Vec covariant_derivative(const MetricField& m, const VectorField& field, const Vec& direction,
                         const Vec& p) {
    auto eval = [&](const Vec& q) { return field(q); };
    Mat dY = fd::jacobian(eval, p, field.fd);  // dY(a,i) = d Y^a / d x_i
    Vec Y = field(p);
    Tensor3 gamma = christoffel(m, p);
    const int n = m.dim;
    Vec out(n);
    for (int a = 0; a < n; ++a) {
        double s = direction.dot(dY.row(a));
        for (int i = 0; i < n; ++i)
            for (int b = 0; b < n; ++b) s += gamma(a, i, b) * direction[i] * Y[b];
        out[a] = s;
    }
    return out;
}

double divergence(const MetricField& m, const VectorField& field, const Vec& p) {
    auto eval = [&](const Vec& q) { return field(q); };
    Mat dY = fd::jacobian(eval, p, field.fd);
    Vec Y = field(p);
    Tensor3 gamma = christoffel(m, p);
    double s = dY.trace();
    const int n = m.dim;
    for (int i = 0; i < n; ++i)
        for (int b = 0; b < n; ++b) s += gamma(i, i, b) * Y[b];
    return s;
}

namespace {

struct OdeState {
    Vec x;
    Vec v;
};

OdeState geodesic_rhs(const MetricField& m, const OdeState& s) {
    Tensor3 gamma = christoffel(m, s.x);
    const int n = m.dim;
    Vec acc(n);
    for (int k = 0; k < n; ++k) {
        double a = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a -= gamma(k, i, j) * s.v[i] * s.v[j];
        acc[k] = a;
    }
    return {s.v, acc};
}

}  // namespace

GeodesicState geodesic_shoot(const MetricField& m, const Vec& p, const Vec& v, double t,
                             const ShootOptions& opts) {
    m.chart.require_inside(p, "geodesic start");
    if (t == 0.0 || v.norm() == 0.0) return {p, v};
    const double speed0 = std::sqrt(v.dot(m.eval(p) * v));
    const double total_arc = std::abs(t) * speed0;
    int steps = std::max(32, static_cast<int>(std::ceil(total_arc / opts.step_arclength)));
    if (steps > opts.max_steps)
        throw NoConvergence("geodesic integration exceeds step budget");
    const double h = t / steps;

    OdeState s{p, v};
    for (int k = 0; k < steps; ++k) {
        try {
            OdeState k1 = geodesic_rhs(m, s);
            OdeState k2 = geodesic_rhs(m, {s.x + 0.5 * h * k1.x, s.v + 0.5 * h * k1.v});
            OdeState k3 = geodesic_rhs(m, {s.x + 0.5 * h * k2.x, s.v + 0.5 * h * k2.v});
            OdeState k4 = geodesic_rhs(m, {s.x + h * k3.x, s.v + h * k3.v});
            s.x += (h / 6.0) * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
            s.v += (h / 6.0) * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
        } catch (const OutOfChart&) {
            throw LeftChart("geodesic left the chart at parameter " +
                            std::to_string((k + 1) * h));
        }
        if (!m.chart.contains(s.x))
            throw LeftChart("geodesic left the chart at parameter " +
                            std::to_string((k + 1) * h));
    }
    return {s.x, s.v};
}

Vec log_map(const MetricField& m, const Vec& x0, const Vec& x, const DistanceOptions& opts) {
    m.chart.require_inside(x0, "distance base point");
    m.chart.require_inside(x, "distance target point");
    const double coord_scale = 1.0 + x.norm() + x0.norm();
    const double tol = opts.tol * coord_scale;

    auto shoot_to = [&](const Vec& w) -> Vec {
        return geodesic_shoot(m, x0, w, 1.0).position;
    };
    auto residual = [&](const Vec& w) -> Vec { return shoot_to(w) - x; };

    Rng rng(opts.seed);
    Vec chord = x - x0;
    for (int attempt = 0; attempt < opts.restarts; ++attempt) {
        Vec w = chord;
        if (attempt > 0) {
            // shrink + jiggle the chord; short undershoots are the safe side
            const double shrink = 1.0 / (1.0 + 0.5 * attempt);
            w = shrink * chord + 0.1 * attempt * chord.norm() * rng.normal_vec(m.dim) /
                                     std::sqrt(static_cast<double>(m.dim));
        }
        Vec r;
        try {
            r = residual(w);
        } catch (const LeftChart&) {
            continue;
        }
        double rn = r.norm();
        bool stuck = false;
        for (int it = 0; it < opts.max_newton_iter && rn > tol && !stuck; ++it) {
            // forward-difference Jacobian of the endpoint map
            const double hj = 1e-6 * (1.0 + w.norm());
            Mat J(m.dim, m.dim);
            bool jac_ok = true;
            for (int i = 0; i < m.dim && jac_ok; ++i) {
                Vec wp = w;
                wp[i] += hj;
                try {
                    J.col(i) = (shoot_to(wp) - (r + x)) / hj;
                } catch (const LeftChart&) {
                    jac_ok = false;
                }
            }
            if (!jac_ok) break;
            Vec delta = J.fullPivLu().solve(r);
            double damp = 1.0;
            stuck = true;
            for (int bt = 0; bt < 12; ++bt) {
                Vec wn = w - damp * delta;
                try {
                    Vec rnw = residual(wn);
                    if (rnw.norm() < rn) {
                        w = wn;
                        r = rnw;
                        rn = rnw.norm();
                        stuck = false;
                        break;
                    }
                } catch (const LeftChart&) {
                }
                damp *= 0.5;
            }
        }
        if (rn <= tol) return w;
    }
    throw NoConvergence("geodesic boundary-value solve did not converge");
}

double distance(const MetricField& m, const Vec& x0, const Vec& x, const DistanceOptions& opts) {
    double d;
    if (opts.use_exact_if_available && m.exact_distance) {
        m.chart.require_inside(x0, "distance base point");
        m.chart.require_inside(x, "distance target point");
        d = m.exact_distance(x0, x);
    } else {
        if ((x - x0).norm() == 0.0) return 0.0;
        Vec w = log_map(m, x0, x, opts);
        d = std::sqrt(w.dot(m.eval(x0) * w));
    }
    if (d > opts.declared_inj_radius)
        throw OutsideDeclaredInjRadius("distance " + std::to_string(d) +
                                       " exceeds declared injectivity radius");
    return d;
}

ScalarField distance_field(const MetricField& m, const Vec& x0, const DistanceOptions& opts) {
    ScalarField rho;
    rho.dim = m.dim;
    rho.name = "dist(" + m.name + ")";
    const bool exact = opts.use_exact_if_available && static_cast<bool>(m.exact_distance);
    // shooting-backed evaluations carry ~1e-11 noise; widen the step for them
    rho.fd = exact ? FdConfig{1e-4, 4} : FdConfig{3e-3, 2};
    rho.f = [m, x0, opts](const Vec& x) { return distance(m, x0, x, opts); };
    return rho;
}

Mat orthonormalize(const Mat& g, const Mat& vectors) {
    const int k = static_cast<int>(vectors.cols());
    Mat out = vectors;
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < i; ++j)
            out.col(i) -= out.col(j).dot(g * out.col(i)) * out.col(j);
        double n2 = out.col(i).dot(g * out.col(i));
        if (n2 < 1e-20)
            throw DegeneratePlane("orthonormalization of a dependent family");
        out.col(i) /= std::sqrt(n2);
    }
    return out;
}

}  // namespace warpgeo::geo
