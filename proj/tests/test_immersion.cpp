#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "warpgeo/builtins.hpp"
#include "warpgeo/geometry.hpp"
#include "warpgeo/immersion.hpp"
#include "warpgeo/models.hpp"
#include "warpgeo/rng.hpp"

using namespace warpgeo;

namespace {

Vec vec1(double a) {
    Vec v(1);
    v << a;
    return v;
}
Vec vec2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

Immersion affine_plane() {
    Immersion im;
    im.name = "affine-plane";
    im.domain_dim = 2;
    im.chart = ChartDomain::box(2, -2, 2, "plane-chart");
    im.ambient = models::euclidean(3, 10.0);
    im.map = [](const Vec& u) {
        Vec q(3);
        q << u[0] + 0.5 * u[1], u[1], 1.0 + 0.25 * u[0];
        return q;
    };
    return im;
}

// Random orthogonal matrix via QR of a gaussian sample.
Mat random_orthogonal(int n, Rng& rng) {
    Mat A(n, n);
    for (int i = 0; i < n; ++i) A.col(i) = rng.normal_vec(n);
    Eigen::HouseholderQR<Mat> qr(A);
    Mat Q = qr.householderQ();
    return Q;
}

}  // namespace

TEST_CASE("induced metric") {
    auto circ = builtins::immersion("circle");
    Mat g = circ.induced_metric(vec1(0.7));
    CHECK(g(0, 0) == doctest::Approx(1.0).epsilon(1e-10));

    auto graph = builtins::immersion("graph");
    MetricField induced = graph.induced_metric_field();
    Rng rng(2);
    for (int t = 0; t < 5; ++t) {
        Vec u = rng.point_in_box(graph.chart, 0.2);
        CHECK(geo::sectional_curvature(induced, u, vec2(1, 0), vec2(0, 1)) ==
              doctest::Approx(1.0).epsilon(1e-4));
    }

    Immersion degenerate = affine_plane();
    degenerate.map = [](const Vec& u) {
        Vec q(3);
        q << u[0], u[0], 0.0;  // collapses the second direction
        return q;
    };
    CHECK_THROWS_AS(degenerate.induced_metric(vec2(0.1, 0.1)), RankDeficient);
}

TEST_CASE("second fundamental form: flat, circle, sphere") {
    auto aff = affine_plane();
    Rng rng(4);
    for (int t = 0; t < 4; ++t) {
        Vec u = rng.point_in_box(aff.chart, 0.2);
        Vec e = rng.normal_vec(2), e2 = rng.normal_vec(2);
        CHECK(second_fundamental_form(aff, u, e, e2).components.norm() < 1e-8);
    }

    auto circ = builtins::immersion("circle");
    for (double theta : {0.0, 0.8, -1.2}) {
        auto s = second_fundamental_form(circ, vec1(theta), vec1(1), vec1(1));
        Vec want(2);
        want << -std::cos(theta), -std::sin(theta);
        CHECK((s.components - want).norm() < 1e-7);
        CHECK(s.components.norm() == doctest::Approx(1.0).epsilon(1e-7));
    }

    const double a = 2.0;
    auto sph = builtins::immersion("sphere-in-euclidean", a, 2);
    for (int t = 0; t < 5; ++t) {
        Vec u = rng.point_in_box(sph.chart, 0.25);
        Mat gm = sph.induced_metric(u);
        Vec e = rng.normal_vec(2), e2 = rng.normal_vec(2);
        auto s11 = second_fundamental_form(sph, u, e, e);
        // umbilical: S(e,e) = -(1/a)|e|^2 nu with nu the outward unit normal
        const double e2g = e.dot(gm * e);
        const Vec nu = sph.at(u) / a;
        CHECK((s11.components + (e2g / a) * nu).norm() < 1e-6 * std::max(1.0, e2g));

        // symmetry and normality
        auto s12 = second_fundamental_form(sph, u, e, e2);
        auto s21 = second_fundamental_form(sph, u, e2, e);
        CHECK((s12.components - s21.components).norm() < 1e-7);
        Mat J = sph.dphi(u);
        Mat G = sph.ambient.eval(sph.at(u));
        CHECK(std::abs(s12.components.dot(G * (J * e))) < 1e-6);
        CHECK(std::abs(s12.components.dot(G * (J * e2))) < 1e-6);
    }
}

TEST_CASE("mean curvature vector") {
    auto aff = affine_plane();
    CHECK(mean_curvature_vector(aff, vec2(0.3, -0.4)).components.norm() < 1e-8);

    const double a = 0.5;
    auto sph = builtins::immersion("sphere-in-euclidean", a, 2);
    Vec u = vec2(1.1, 0.6);
    CHECK(mean_curvature_vector(sph, u).components.norm() ==
          doctest::Approx(2.0 / a).epsilon(1e-6));

    auto circ = builtins::immersion("circle");
    CHECK(mean_curvature_vector(circ, vec1(0.4)).components.norm() ==
          doctest::Approx(1.0).epsilon(1e-6));

    // basis independence: trace over a randomly rotated orthonormal frame
    Rng rng(9);
    Mat frame = sph.tangent_frame(u);
    Vec h = Vec::Zero(3);
    Mat Q = random_orthogonal(2, rng);
    Mat rotated = frame * Q;
    for (int i = 0; i < 2; ++i)
        h += second_fundamental_form(sph, u, rotated.col(i), rotated.col(i)).components;
    CHECK((h - mean_curvature_vector(sph, u).components).norm() < 1e-8);
}

TEST_CASE("composed gradient and hessian") {
    auto aff = affine_plane();
    ScalarField lin{3, [](const Vec& q) { return 2.0 * q[0] - q[1] + 0.3 * q[2]; }, "lin"};
    Rng rng(12);
    for (int t = 0; t < 3; ++t) {
        Vec u = rng.point_in_box(aff.chart, 0.2);
        Vec e = rng.normal_vec(2);
        CHECK(std::abs(composed_hessian(aff, lin, u, e)) < 1e-7);
    }

    // constant composition on the circle
    auto circ = builtins::immersion("circle");
    ScalarField r2{2, [](const Vec& q) { return q.squaredNorm(); }, "x^2+y^2"};
    CHECK(std::abs(composed_hessian(circ, r2, vec1(0.5), vec1(1))) < 1e-7);

    // height function on the unit sphere vs the direct induced-metric route
    auto sph = builtins::immersion("sphere-in-euclidean", 1.0, 2);
    ScalarField height{3, [](const Vec& q) { return q[2]; }, "z"};
    MetricField induced = sph.induced_metric_field();
    for (int t = 0; t < 5; ++t) {
        Vec u = rng.point_in_box(sph.chart, 0.25);
        Vec e = rng.normal_vec(2);
        ScalarField f{2, [&](const Vec& w) { return height(sph.map(w)); }, "z o phi"};
        Mat hf = geo::hessian(induced, f, u);
        CHECK(std::abs(composed_hessian(sph, height, u, e) - e.dot(hf * e)) <
              1e-4 * std::max(1.0, std::abs(e.dot(hf * e))));

        Vec grad_direct = geo::gradient(induced, f, u);
        CHECK((composed_gradient(sph, height, u) - grad_direct).norm() < 1e-6);
    }
}

TEST_CASE("composed hessian master test across builtin immersions") {
    Rng rng(21);
    std::vector<Immersion> imms = {builtins::immersion("circle"),
                                   builtins::immersion("sphere-in-euclidean", 1.0, 2),
                                   builtins::immersion("graph"),
                                   builtins::immersion("clifford-torus"),
                                   builtins::immersion("sphere-in-product", 0.5, 2)};
    for (const auto& im : imms) {
        ScalarField L{im.ambient.dim,
                      [](const Vec& q) { return std::sin(q[0]) + 0.5 * q[1] * q[1]; }, "L"};
        MetricField induced = im.induced_metric_field();
        for (int t = 0; t < 4; ++t) {
            Vec u = rng.point_in_box(im.chart, 0.25);
            Vec e = rng.normal_vec(im.domain_dim);
            ScalarField f{im.domain_dim, [&](const Vec& w) { return L(im.map(w)); }, "f"};
            Mat hf = geo::hessian(induced, f, u);
            const double direct = e.dot(hf * e);
            const double formula = composed_hessian(im, L, u, e);
            CHECK(std::abs(direct - formula) < 1e-3 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST_CASE("warped hessian lifts agree with the composed route") {
    // helix-type curve inside the flat-polar warped product
    auto pol = builtins::warped_product("polar-plane");
    Immersion helix;
    helix.name = "helix";
    helix.domain_dim = 1;
    helix.chart = ChartDomain::of({{-1.0, 1.0}}, "helix-chart");
    helix.warped = std::make_shared<wp::WarpedProduct>(pol);
    helix.ambient = wp::assemble_metric(pol);
    helix.map = [](const Vec& u) {
        Vec q(2);
        q << 2.0 + 0.3 * u[0], 0.8 * u[0];
        return q;
    };

    ScalarField G{1, [](const Vec& v) { return v[0]; }, "phi"};
    ScalarField Gv{2, [](const Vec& q) { return q[1]; }, "phi^v"};
    ScalarField F{1, [](const Vec& x) { return x[0] * x[0]; }, "r^2"};
    ScalarField Fh{2, [](const Vec& q) { return q[0] * q[0]; }, "r^2^h"};
    Rng rng(31);
    for (int t = 0; t < 6; ++t) {
        Vec u = vec1(rng.uniform(-0.8, 0.8));
        Vec e = vec1(rng.uniform(0.5, 2.0));
        CHECK(std::abs(hessian_lift_vertical(helix, G, u, e) -
                       composed_hessian(helix, Gv, u, e)) < 1e-6);
        CHECK(std::abs(hessian_lift_horizontal(helix, F, u, e) -
                       composed_hessian(helix, Fh, u, e)) < 1e-6);
    }

    // psi = 1 product ambient: the warp terms drop out
    auto sphp = builtins::immersion("sphere-in-product", 0.5, 2);
    ScalarField Gfib{1, [](const Vec& v) { return v[0] * v[0]; }, "s^2"};
    ScalarField Gfib_lift{3, [](const Vec& q) { return q[2] * q[2]; }, "s^2^v"};
    ScalarField Fbase{2, [](const Vec& x) { return x[0] + 0.2 * x[1]; }, "F"};
    ScalarField Fbase_lift{3, [](const Vec& q) { return q[0] + 0.2 * q[1]; }, "F^h"};
    for (int t = 0; t < 4; ++t) {
        Vec u = rng.point_in_box(sphp.chart, 0.25);
        Vec e = rng.normal_vec(2);
        CHECK(std::abs(hessian_lift_vertical(sphp, Gfib, u, e) -
                       composed_hessian(sphp, Gfib_lift, u, e)) < 1e-6);
        CHECK(std::abs(hessian_lift_horizontal(sphp, Fbase, u, e) -
                       composed_hessian(sphp, Fbase_lift, u, e)) < 1e-6);
    }

    // vertical immersion: fiber slice of the polar product
    Immersion slice;
    slice.name = "fiber-slice";
    slice.domain_dim = 1;
    slice.chart = ChartDomain::of({{-2.0, 2.0}}, "slice-chart");
    slice.warped = std::make_shared<wp::WarpedProduct>(pol);
    slice.ambient = wp::assemble_metric(pol);
    slice.map = [](const Vec& u) {
        Vec q(2);
        q << 3.0, 0.4 * u[0];
        return q;
    };
    for (int t = 0; t < 3; ++t) {
        Vec u = vec1(rng.uniform(-1.5, 1.5));
        Vec e = vec1(1.0);
        CHECK(std::abs(hessian_lift_horizontal(slice, F, u, e) -
                       composed_hessian(slice, Fh, u, e)) < 1e-6);
    }

    CHECK_THROWS_AS(hessian_lift_vertical(builtins::immersion("circle"), G, vec1(0.1), vec1(1)),
                    AmbientNotWarped);
}

TEST_CASE("gauss sectional defect") {
    auto aff = affine_plane();
    CHECK(std::abs(gauss_sectional_defect(aff, vec2(0.2, 0.1), vec2(1, 0), vec2(0, 1))) < 1e-8);

    // unit sphere in flat space: K_M - K_ambient = 1
    auto sph = builtins::immersion("sphere-in-euclidean", 1.0, 2);
    Rng rng(8);
    MetricField induced = sph.induced_metric_field();
    for (int t = 0; t < 4; ++t) {
        Vec u = rng.point_in_box(sph.chart, 0.25);
        Vec e1 = rng.normal_vec(2), e2 = rng.normal_vec(2);
        if (std::abs(e1[0] * e2[1] - e1[1] * e2[0]) < 1e-2) continue;
        const double defect = gauss_sectional_defect(sph, u, e1, e2);
        CHECK(defect == doctest::Approx(1.0).epsilon(1e-4));
        // independent route: intrinsic minus extrinsic curvature
        const double km = geo::sectional_curvature(induced, u, e1, e2);
        Mat J = sph.dphi(u);
        const double kamb =
            geo::sectional_curvature(sph.ambient, sph.at(u), J * e1, J * e2);
        CHECK(std::abs(defect - (km - kamb)) < 1e-3);
    }

    // flat torus in R^4: the defect is the intrinsic curvature (zero)
    auto tor = builtins::immersion("clifford-torus");
    MetricField tor_induced = tor.induced_metric_field();
    for (int t = 0; t < 3; ++t) {
        Vec u = rng.point_in_box(tor.chart, 0.2);
        const double defect = gauss_sectional_defect(tor, u, vec2(1, 0.2), vec2(-0.1, 1));
        const double km = geo::sectional_curvature(tor_induced, u, vec2(1, 0.2), vec2(-0.1, 1));
        CHECK(std::abs(defect - km) < 1e-3);
        CHECK(std::abs(defect) < 1e-3);
    }

    CHECK_THROWS_AS(gauss_sectional_defect(sph, vec2(1.0, 0.3), vec2(1, 0), vec2(2, 0)),
                    DegeneratePlane);
}

TEST_CASE("tangent splitting against the radial direction") {
    auto pol = builtins::warped_product("polar-plane");
    Immersion helix;
    helix.domain_dim = 1;
    helix.name = "helix";
    helix.chart = ChartDomain::of({{-1.0, 1.0}}, "helix-chart");
    helix.warped = std::make_shared<wp::WarpedProduct>(pol);
    helix.ambient = wp::assemble_metric(pol);
    helix.map = [](const Vec& u) {
        Vec q(2);
        q << 2.0 + 0.3 * u[0], 0.8 * u[0];
        return q;
    };

    RadialContext ctx;
    ctx.x0 = vec1(1.0);
    ctx.base = &pol.base;
    ctx.rho = geo::distance_field(pol.base, ctx.x0);
    ctx.declared_inj_radius = 10.0;

    Rng rng(3);
    Mat gX = pol.base.eval(vec1(2.0));
    for (int t = 0; t < 6; ++t) {
        Vec u = vec1(rng.uniform(-0.8, 0.8));
        Vec e = vec1(rng.uniform(0.3, 1.5));
        auto sp = split_tangent(helix, ctx, u, e);
        const double hor2 = sp.hor.dot(gX * sp.hor);
        const double sum2 = sp.rho.dot(gX * sp.rho) + sp.perp.dot(gX * sp.perp);
        CHECK(std::abs(hor2 - sum2) < 1e-10);
    }

    // purely vertical tangent: all horizontal parts vanish
    Immersion slice;
    slice.domain_dim = 1;
    slice.name = "slice";
    slice.chart = ChartDomain::of({{-2.0, 2.0}}, "slice-chart");
    slice.warped = std::make_shared<wp::WarpedProduct>(pol);
    slice.ambient = wp::assemble_metric(pol);
    slice.map = [](const Vec& u) {
        Vec q(2);
        q << 3.0, 0.4 * u[0];
        return q;
    };
    auto sp = split_tangent(slice, ctx, vec1(0.2), vec1(1));
    CHECK(sp.hor.norm() < 1e-12);
    CHECK(sp.rho.norm() < 1e-12);
    CHECK(sp.perp.norm() < 1e-12);
}

TEST_CASE("vertical energy respects the fiber-dimension bound") {
    Rng rng(17);
    for (int dim : {2, 3}) {
        auto im = builtins::immersion("sphere-in-product", 0.5, dim);
        for (int t = 0; t < 8; ++t) {
            Vec u = rng.point_in_box(im.chart, 0.2);
            const double sum = vertical_energy(im, u);
            CHECK(sum <= 1.0 + 1e-8);  // n_V = 1 for these products
            CHECK(sum >= -1e-12);
        }
    }
}
