#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "warpgeo/geometry.hpp"
#include "warpgeo/models.hpp"
#include "warpgeo/rng.hpp"

using namespace warpgeo;

namespace {

Vec pt2(double a, double b) {
    Vec p(2);
    p << a, b;
    return p;
}
Vec pt3(double a, double b, double c) {
    Vec p(3);
    p << a, b, c;
    return p;
}

// Closed-form Christoffel symbols of the round unit sphere in (theta, phi):
// the symbolic oracle the finite-difference values are checked against.
double sphere_gamma(int k, int i, int j, double theta) {
    if (k == 0 && i == 1 && j == 1) return -std::sin(theta) * std::cos(theta);
    if (k == 1 && ((i == 0 && j == 1) || (i == 1 && j == 0)))
        return std::cos(theta) / std::sin(theta);
    return 0.0;
}

// Closed-form Christoffels of the Poincare half-plane (b = -1).
double half_plane_gamma(int k, int i, int j, double y) {
    const double v = 1.0 / y;
    if (k == 0 && ((i == 0 && j == 1) || (i == 1 && j == 0))) return -v;  // Gamma^x_{xy}
    if (k == 1 && i == 0 && j == 0) return v;                            // Gamma^y_{xx}
    if (k == 1 && i == 1 && j == 1) return -v;                           // Gamma^y_{yy}
    return 0.0;
}

}  // namespace

TEST_CASE("metric field guards") {
    auto eu = models::euclidean(2);
    CHECK_THROWS_AS(eu.eval(pt2(100.0, 0.0)), OutOfChart);

    MetricField bad;
    bad.dim = 2;
    bad.name = "degenerate";
    bad.chart = ChartDomain::box(2, -1, 1);
    bad.g = [](const Vec&) {
        Mat g = Mat::Zero(2, 2);
        g(0, 0) = 1.0;
        return g;
    };
    CHECK_THROWS_AS(bad.eval(pt2(0, 0)), SingularMetric);
}

TEST_CASE("christoffel: flat, sphere, half-plane") {
    auto eu = models::euclidean(3);
    auto gamma = geo::christoffel(eu, pt3(0.3, -0.4, 2.0));
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(gamma(k, i, j) == doctest::Approx(0.0).epsilon(1e-12));

    auto s2 = models::sphere2(1.0);
    for (double theta : {M_PI / 4, 1.0, 2.0}) {
        auto g = geo::christoffel(s2, pt2(theta, 0.4));
        for (int k = 0; k < 2; ++k)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    CHECK(g(k, i, j) == doctest::Approx(sphere_gamma(k, i, j, theta)).epsilon(0).scale(1).epsilon(1e-6));
                    CHECK(g(k, i, j) == doctest::Approx(g(k, j, i)));
                }
    }
    CHECK(geo::christoffel(s2, pt2(M_PI / 4, 0.0))(0, 1, 1) == doctest::Approx(-0.5).epsilon(1e-7));

    auto hp = models::poincare_half_plane();
    for (double y : {1.0, 0.5, 3.0}) {
        auto g = geo::christoffel(hp, pt2(0.0, y));
        for (int k = 0; k < 2; ++k)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    CHECK(g(k, i, j) == doctest::Approx(half_plane_gamma(k, i, j, y)).epsilon(1e-6));
    }
    CHECK(geo::christoffel(hp, pt2(0.0, 1.0))(0, 0, 1) == doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("metric compatibility on constant-coefficient metrics") {
    MetricField m;
    m.dim = 3;
    m.name = "const-aniso";
    m.chart = ChartDomain::box(3, -5, 5);
    Mat g0(3, 3);
    g0 << 2.0, 0.3, 0.0, 0.3, 1.5, -0.2, 0.0, -0.2, 0.8;
    m.g = [g0](const Vec&) { return g0; };
    Vec p = pt3(0.7, -1.1, 0.2);
    auto gamma = geo::christoffel(m, p);
    // nabla g = 0: d_k g_ij - Gamma^l_{ki} g_lj - Gamma^l_{kj} g_il = 0
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double resid = 0.0;  // dg = 0 for constant metric
                for (int l = 0; l < 3; ++l)
                    resid -= gamma(l, k, i) * g0(l, j) + gamma(l, k, j) * g0(i, l);
                CHECK(std::abs(resid) < 1e-6);
            }
}

TEST_CASE("riemann tensor values and antisymmetry") {
    auto eu = models::euclidean(2);
    auto r0 = geo::riemann(eu, pt2(0.2, 0.4));
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) CHECK(std::abs(r0(a, b, c, d)) < 1e-9);

    auto s2 = models::sphere2(1.0);
    for (double theta : {0.6, M_PI / 4, 2.2}) {
        auto r = geo::riemann(s2, pt2(theta, -0.3));
        const double want = std::sin(theta) * std::sin(theta);
        CHECK(r(0, 1, 0, 1) == doctest::Approx(want).epsilon(1e-5));
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c)
                    for (int d = 0; d < 2; ++d)
                        CHECK(r(a, b, c, d) == doctest::Approx(-r(b, a, c, d)).scale(1.0));
    }
}

TEST_CASE("sectional curvature: model values and re-basis invariance") {
    auto eu = models::euclidean(3);
    Vec u = pt3(1, 0, 0), v = pt3(0.3, 1, 0);
    CHECK(std::abs(geo::sectional_curvature(eu, pt3(0.1, 0.2, 0.3), u, v)) < 1e-8);

    auto s2 = models::sphere2(1.0);
    auto hp = models::poincare_half_plane();
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Vec p = pt2(rng.uniform(0.4, 2.6), rng.uniform(-2.0, 2.0));
        Vec a = rng.normal_vec(2), b = rng.normal_vec(2);
        if (std::abs(a[0] * b[1] - a[1] * b[0]) < 1e-3) continue;
        CHECK(geo::sectional_curvature(s2, p, a, b) == doctest::Approx(1.0).epsilon(1e-4));
        Vec q = pt2(rng.uniform(-1.0, 1.0), rng.uniform(0.5, 3.0));
        CHECK(geo::sectional_curvature(hp, q, a, b) == doctest::Approx(-1.0).epsilon(1e-4));

        // plane re-basis invariance
        double K0 = geo::sectional_curvature(s2, p, a, b);
        double aa = rng.uniform(-2, 2), bb = rng.uniform(-2, 2), cc = rng.uniform(-2, 2),
               dd = rng.uniform(-2, 2);
        if (std::abs(aa * dd - bb * cc) < 0.1) continue;
        double K1 = geo::sectional_curvature(s2, p, aa * a + bb * b, cc * a + dd * b);
        CHECK(std::abs(K0 - K1) < 1e-6);
    }

    CHECK_THROWS_AS(geo::sectional_curvature(eu, pt3(0, 0, 0), u, 2.0 * u), DegeneratePlane);
}

TEST_CASE("scalar curvature of space forms") {
    auto eu = models::euclidean(3);
    CHECK(std::abs(geo::scalar_curvature(eu, pt3(1, 0, -2))) < 1e-7);
    auto s2 = models::sphere2(1.0);
    CHECK(geo::scalar_curvature(s2, pt2(1.1, 0.4)) == doctest::Approx(2.0).epsilon(1e-5));
    auto s3 = models::sphere3(1.0);
    CHECK(geo::scalar_curvature(s3, pt3(1.2, 1.4, 0.3)) == doctest::Approx(6.0).epsilon(1e-5));
    // dim-2 identity: s = 2K
    auto hp = models::poincare_half_plane();
    CHECK(geo::scalar_curvature(hp, pt2(0.3, 2.0)) == doctest::Approx(-2.0).epsilon(1e-5));
}

TEST_CASE("gradient, hessian, laplacian") {
    auto eu = models::euclidean(3);
    ScalarField r2{3, [](const Vec& p) { return p.squaredNorm(); }, "r2"};
    Vec p = pt3(0.5, -0.7, 1.2);
    Mat h = geo::hessian(eu, r2, p);
    CHECK((h - 2.0 * Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(geo::laplacian(eu, r2, p) == doctest::Approx(6.0).epsilon(1e-7));
    CHECK((geo::gradient(eu, r2, p) - 2.0 * p).norm() < 1e-8);

    ScalarField lin{3, [](const Vec& q) { return 2.0 * q[0] - q[2]; }, "lin"};
    CHECK(geo::hessian(eu, lin, p).cwiseAbs().maxCoeff() < 1e-8);

    // eigenfunction of the round sphere Laplacian
    auto s2 = models::sphere2(1.0);
    ScalarField cth{2, [](const Vec& q) { return std::cos(q[0]); }, "cos(theta)"};
    for (double theta : {0.7, 1.3, 2.1}) {
        Vec q = pt2(theta, 0.2);
        CHECK(geo::laplacian(s2, cth, q) ==
              doctest::Approx(-2.0 * std::cos(theta)).epsilon(1e-5));
        Mat hess = geo::hessian(s2, cth, q);
        CHECK((hess - hess.transpose()).cwiseAbs().maxCoeff() < 1e-12);
        // laplacian = metric trace of the hessian
        CHECK(geo::laplacian(s2, cth, q) ==
              doctest::Approx((s2.inverse_at(q) * hess).trace()).epsilon(1e-10));
    }
}

TEST_CASE("geodesic shooting") {
    auto eu = models::euclidean(2);
    auto end = geo::geodesic_shoot(eu, pt2(0, 0), pt2(1, 0), 2.0);
    CHECK((end.position - pt2(2, 0)).norm() < 1e-10);

    // quarter great circle on the unit sphere, along the equator
    auto s2 = models::sphere2(1.0);
    Vec start = pt2(M_PI / 2, 0.0);
    Vec dir = pt2(0.0, 1.0);  // unit: g_phiphi = sin^2(pi/2) = 1
    auto quarter = geo::geodesic_shoot(s2, start, dir, M_PI / 2);
    CHECK(quarter.position[0] == doctest::Approx(M_PI / 2).epsilon(1e-8));
    CHECK(quarter.position[1] == doctest::Approx(M_PI / 2).epsilon(1e-8));
    const double speed0 = std::sqrt(dir.dot(s2.eval(start) * dir));
    const double speed1 =
        std::sqrt(quarter.velocity.dot(s2.eval(quarter.position) * quarter.velocity));
    CHECK(std::abs(speed1 - speed0) / speed0 < 1e-8);

    // vertical shoot in the half-plane stays on the axis
    auto hp = models::poincare_half_plane();
    auto up = geo::geodesic_shoot(hp, pt2(0, 1), pt2(0, 1), 1.0);
    CHECK(std::abs(up.position[0]) < 1e-12);
    CHECK(up.position[1] == doctest::Approx(std::exp(1.0)).epsilon(1e-7));

    CHECK_THROWS_AS(geo::geodesic_shoot(eu, pt2(9.9, 0), pt2(1, 0), 1.0), LeftChart);
}

TEST_CASE("geodesic speed conservation over unit arc length") {
    auto s2 = models::sphere2(1.0);
    auto hp = models::poincare_half_plane();
    Rng rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        Vec v = rng.normal_vec(2);
        Vec on_sphere = pt2(rng.uniform(0.8, 2.2), rng.uniform(-1.0, 1.0));
        Vec on_halfplane = pt2(rng.uniform(-1.0, 1.0), rng.uniform(1.0, 3.0));
        for (const auto& [m, q] : {std::pair{s2, on_sphere}, std::pair{hp, on_halfplane}}) {
            const double sp0 = std::sqrt(v.dot(m.eval(q) * v));
            auto st = geo::geodesic_shoot(m, q, v / sp0, 1.0);
            const double sp1 = std::sqrt(st.velocity.dot(m.eval(st.position) * st.velocity));
            CHECK(std::abs(sp1 - 1.0) < 1e-8);
        }
    }
}

TEST_CASE("distance: exact forms and the shooting solver") {
    auto eu = models::euclidean(2);
    Vec a = pt2(0.3, -1.0), b = pt2(2.0, 1.5);
    CHECK(geo::distance(eu, a, b) == doctest::Approx((a - b).norm()));
    geo::DistanceOptions shoot;
    shoot.use_exact_if_available = false;
    CHECK(geo::distance(eu, a, b, shoot) == doctest::Approx((a - b).norm()).epsilon(1e-9));

    auto s2 = models::sphere2(1.0);
    Vec p = pt2(M_PI / 2, 0.0), q = pt2(M_PI / 3, 0.9);
    const double want = std::acos(std::sin(M_PI / 3) * std::cos(0.9));
    CHECK(geo::distance(s2, p, q) == doctest::Approx(want).epsilon(1e-12));
    CHECK(geo::distance(s2, p, q, shoot) == doctest::Approx(want).epsilon(1e-8));

    auto hp = models::poincare_half_plane();
    Vec h0 = pt2(0, 1), h1 = pt2(0, std::exp(1.0));
    CHECK(geo::distance(hp, h0, h1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(geo::distance(hp, h0, h1, shoot) == doctest::Approx(1.0).epsilon(1e-8));

    geo::DistanceOptions bounded;
    bounded.declared_inj_radius = 0.5;
    CHECK_THROWS_AS(geo::distance(eu, a, b, bounded), OutsideDeclaredInjRadius);
}

TEST_CASE("distance field: unit gradient and radial hessian") {
    // |grad rho| = 1 and Hess rho annihilates the radial direction
    for (double b : {0.0, 1.0, -1.0}) {
        auto m = models::space_form2(b);
        Vec x0 = models::default_center(m);
        auto rho = geo::distance_field(m, x0);
        Rng rng(int(7 + b));
        for (int trial = 0; trial < 8; ++trial) {
            Vec dx = 0.5 * rng.unit_vec(2);
            Vec x = x0 + dx;
            Vec grad = geo::gradient(m, rho, x);
            const double norm = std::sqrt(grad.dot(m.eval(x) * grad));
            CHECK(std::abs(norm - 1.0) < 1e-4);
            Mat hess = geo::hessian(m, rho, x);
            const double radial = grad.dot(hess * grad);
            CHECK(std::abs(radial) < 1e-4);
        }
    }
    // same invariant through the shooting solver (no closed form consulted)
    auto hp = models::poincare_half_plane();
    geo::DistanceOptions shoot;
    shoot.use_exact_if_available = false;
    auto rho = geo::distance_field(hp, pt2(0, 1), shoot);
    Vec x = pt2(0.4, 1.3);
    Vec grad = geo::gradient(hp, rho, x);
    CHECK(std::abs(std::sqrt(grad.dot(hp.eval(x) * grad)) - 1.0) < 1e-4);
}
