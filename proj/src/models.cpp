#include "warpgeo/models.hpp"

#include <cmath>

namespace warpgeo::models {

namespace {

Vec embed_s2(const Vec& p) {
    // (theta, phi) -> unit vector in R^3
    Vec e(3);
    e << std::sin(p[0]) * std::cos(p[1]), std::sin(p[0]) * std::sin(p[1]), std::cos(p[0]);
    return e;
}

Vec embed_s3(const Vec& p) {
    // (chi, theta, phi) -> unit vector in R^4
    Vec e(4);
    const double schi = std::sin(p[0]);
    e << schi * std::sin(p[1]) * std::cos(p[2]), schi * std::sin(p[1]) * std::sin(p[2]),
        schi * std::cos(p[1]), std::cos(p[0]);
    return e;
}

double angular_distance(const Vec& a, const Vec& b) {
    return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
}

}  // namespace

MetricField euclidean(int dim, double half_width) {
    MetricField m;
    m.dim = dim;
    m.name = "euclidean" + std::to_string(dim);
    m.chart = ChartDomain::box(dim, -half_width, half_width, m.name);
    m.g = [dim](const Vec&) { return Mat(Mat::Identity(dim, dim)); };
    m.exact_distance = [](const Vec& a, const Vec& b) { return (a - b).norm(); };
    return m;
}

MetricField sphere2(double a) {
    MetricField m;
    m.dim = 2;
    m.name = "sphere2(a=" + std::to_string(a) + ")";
    m.chart = ChartDomain::of({{0.05, M_PI - 0.05}, {-M_PI + 0.05, M_PI - 0.05}}, m.name);
    m.g = [a](const Vec& p) {
        Mat g = Mat::Zero(2, 2);
        const double s = std::sin(p[0]);
        g(0, 0) = a * a;
        g(1, 1) = a * a * s * s;
        return g;
    };
    m.exact_distance = [a](const Vec& p, const Vec& q) {
        return a * angular_distance(embed_s2(p), embed_s2(q));
    };
    return m;
}

MetricField sphere3(double a) {
    MetricField m;
    m.dim = 3;
    m.name = "sphere3(a=" + std::to_string(a) + ")";
    m.chart = ChartDomain::of(
        {{0.05, M_PI - 0.05}, {0.05, M_PI - 0.05}, {-M_PI + 0.05, M_PI - 0.05}}, m.name);
    m.g = [a](const Vec& p) {
        Mat g = Mat::Zero(3, 3);
        const double schi = std::sin(p[0]), sth = std::sin(p[1]);
        g(0, 0) = a * a;
        g(1, 1) = a * a * schi * schi;
        g(2, 2) = a * a * schi * schi * sth * sth;
        return g;
    };
    m.exact_distance = [a](const Vec& p, const Vec& q) {
        return a * angular_distance(embed_s3(p), embed_s3(q));
    };
    return m;
}

MetricField half_plane(double b) {
    if (!(b < 0)) throw InvalidArgument("half_plane needs a negative curvature");
    const double c2 = -1.0 / b;  // scaling (c^2) g_{-1} has curvature b
    MetricField m;
    m.dim = 2;
    m.name = "half-plane(b=" + std::to_string(b) + ")";
    m.chart = ChartDomain::of({{-40.0, 40.0}, {1e-3, 80.0}}, m.name);
    m.g = [c2](const Vec& p) {
        Mat g = Mat::Zero(2, 2);
        g(0, 0) = g(1, 1) = c2 / (p[1] * p[1]);
        return g;
    };
    m.exact_distance = [c2](const Vec& p, const Vec& q) {
        const double t = 1.0 + ((p - q).squaredNorm()) / (2.0 * p[1] * q[1]);
        return std::sqrt(c2) * std::acosh(t);
    };
    return m;
}

MetricField space_form2(double b) {
    if (b > 0) return sphere2(1.0 / std::sqrt(b));
    if (b < 0) return half_plane(b);
    return euclidean(2);
}

MetricField circle() {
    MetricField m;
    m.dim = 1;
    m.name = "circle";
    m.chart = ChartDomain::of({{-M_PI + 1e-3, M_PI - 1e-3}}, m.name);
    m.g = [](const Vec&) { return Mat(Mat::Identity(1, 1)); };
    m.exact_distance = [](const Vec& a, const Vec& b) { return std::abs(a[0] - b[0]); };
    return m;
}

Vec default_center(const MetricField& m) {
    if (m.name.rfind("sphere2", 0) == 0) {
        Vec c(2);
        c << M_PI / 2, 0.0;
        return c;
    }
    if (m.name.rfind("sphere3", 0) == 0) {
        Vec c(3);
        c << M_PI / 2, M_PI / 2, 0.0;
        return c;
    }
    if (m.name.rfind("half-plane", 0) == 0) {
        Vec c(2);
        c << 0.0, 1.0;
        return c;
    }
    return m.chart.center();
}

}  // namespace warpgeo::models
