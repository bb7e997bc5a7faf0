#include "warpgeo/builtins.hpp"

#include <cmath>

#include "warpgeo/models.hpp"

namespace warpgeo::builtins {

namespace {

MetricField line(double lo, double hi, const std::string& name) {
    MetricField m;
    m.dim = 1;
    m.name = name;
    m.chart = ChartDomain::of({{lo, hi}}, name);
    m.g = [](const Vec&) { return Mat(Mat::Identity(1, 1)); };
    m.exact_distance = [](const Vec& a, const Vec& b) { return std::abs(a[0] - b[0]); };
    return m;
}

ScalarField const_one(int dim) {
    return {dim, [](const Vec&) { return 1.0; }, "1"};
}

ScalarField radial_coordinate() {
    return {1, [](const Vec& x) { return x[0]; }, "r"};
}

ScalarField exp_coordinate() {
    return {1, [](const Vec& x) { return std::exp(x[0]); }, "exp(t)"};
}

}  // namespace

wp::WarpedProduct warped_product(const std::string& name) {
    wp::WarpedProduct w;
    w.name = name;
    if (name == "product") {
        w.base = models::euclidean(2, 5.0);
        w.fiber = line(-5.0, 5.0, "fiber-line");
        w.psi = const_one(2);
        return w;
    }
    if (name == "product3") {
        w.base = models::euclidean(3, 5.0);
        w.fiber = line(-5.0, 5.0, "fiber-line");
        w.psi = const_one(3);
        return w;
    }
    if (name == "polar-plane") {
        w.base = line(0.05, 8.0, "ray");
        w.fiber = models::circle();
        w.psi = radial_coordinate();
        return w;
    }
    if (name == "polar-space") {
        w.base = line(0.05, 8.0, "ray");
        w.fiber = models::sphere2(1.0);
        w.psi = radial_coordinate();
        return w;
    }
    if (name == "polar-strip") {
        w.base = line(0.05, 8.0, "ray");
        w.fiber = line(-8.0, 8.0, "strip");
        w.psi = radial_coordinate();
        return w;
    }
    if (name == "hyperbolic-as-warped") {
        w.base = line(-3.0, 3.0, "axis");
        w.fiber = line(-8.0, 8.0, "fiber-line");
        w.psi = exp_coordinate();
        return w;
    }
    throw InvalidArgument("unknown builtin warped product '" + name + "'");
}

std::vector<std::string> warped_product_names() {
    return {"product", "product3", "polar-plane", "polar-space", "polar-strip",
            "hyperbolic-as-warped"};
}

namespace {

ChartDomain sphere_chart(int dim) {
    std::vector<std::pair<double, double>> b;
    for (int i = 0; i + 1 < dim; ++i) b.push_back({0.08, M_PI - 0.08});
    b.push_back({-M_PI + 0.08, M_PI - 0.08});
    return ChartDomain::of(std::move(b), "sphere-chart");
}

// Round-sphere parametrization: last angle is the azimuth.
Vec sphere_embed(double a, const Vec& u) {
    const int n = static_cast<int>(u.size());
    Vec q(n + 1);
    double sins = a;
    for (int i = 0; i < n; ++i) {
        q[n - i] = sins * std::cos(u[i]);  // fill from the last coordinate down
        sins *= std::sin(u[i]);
    }
    q[0] = sins;
    return q;
}

}  // namespace

Immersion immersion(const std::string& name, double a, int dim) {
    Immersion im;
    im.name = name;
    if (name == "circle" || (name == "sphere-in-euclidean" && dim == 1)) {
        const double radius = (name == "circle") ? 1.0 : a;
        im.domain_dim = 1;
        im.chart = ChartDomain::of({{-M_PI + 0.05, M_PI - 0.05}}, "circle-chart");
        im.ambient = models::euclidean(2, std::max(5.0, 2 * radius));
        im.map = [radius](const Vec& u) {
            Vec q(2);
            q << radius * std::cos(u[0]), radius * std::sin(u[0]);
            return q;
        };
        return im;
    }
    if (name == "sphere-in-euclidean") {
        im.domain_dim = dim;
        im.chart = sphere_chart(dim);
        im.ambient = models::euclidean(dim + 1, std::max(5.0, 2 * a));
        im.map = [a](const Vec& u) { return sphere_embed(a, u); };
        return im;
    }
    if (name == "sphere-in-product") {
        // S^dim(a) inside the product (R^dim) x R; the last embedding
        // coordinate is the fiber one.
        im.domain_dim = dim;
        im.chart = sphere_chart(dim);
        auto w = warped_product(dim == 2 ? "product" : "product3");
        im.warped = std::make_shared<wp::WarpedProduct>(w);
        im.ambient = wp::assemble_metric(w);
        im.map = [a, dim](const Vec& u) {
            // reorder so the cos(chi) coordinate sits in the fiber slot
            Vec e = sphere_embed(a, u);
            Vec q(dim + 1);
            q.head(dim) = e.head(dim);
            q[dim] = e[dim];
            return q;
        };
        return im;
    }
    if (name == "graph") {
        im.domain_dim = 2;
        im.chart = ChartDomain::box(2, -0.55, 0.55, "graph-chart");
        im.ambient = models::euclidean(3, 5.0);
        im.map = [](const Vec& u) {
            Vec q(3);
            q << u[0], u[1], std::sqrt(1.0 - u.squaredNorm());
            return q;
        };
        return im;
    }
    if (name == "clifford-torus") {
        const double c = a / std::sqrt(2.0);
        im.domain_dim = 2;
        im.chart = ChartDomain::box(2, -M_PI + 0.05, M_PI - 0.05, "torus-chart");
        im.ambient = models::euclidean(4, 5.0);
        im.map = [c](const Vec& u) {
            Vec q(4);
            q << c * std::cos(u[0]), c * std::sin(u[0]), c * std::cos(u[1]),
                c * std::sin(u[1]);
            return q;
        };
        return im;
    }
    throw InvalidArgument("unknown builtin immersion '" + name + "'");
}

std::vector<std::string> immersion_names() {
    return {"sphere-in-euclidean", "sphere-in-product", "circle", "graph", "clifford-torus",
            "fiber-slice", "base-slice"};
}

sub::RiemannianSubmersion submersion(const std::string& name, const std::string& warped_name) {
    if (name == "product") return sub::from_warped(warped_product("product"));
    if (name == "warped") return sub::from_warped(warped_product(warped_name));
    if (name == "hopf-chart") {
        sub::RiemannianSubmersion s;
        s.name = "hopf-chart";
        s.fiber_dim = 1;
        s.base = models::sphere2(0.5);

        MetricField total;
        total.dim = 3;
        total.name = "s3-hopf-chart";
        total.chart = ChartDomain::of(
            {{0.15, M_PI / 2 - 0.15}, {-1.5, 1.5}, {-1.5, 1.5}}, total.name);
        total.g = [](const Vec& p) {
            Mat g = Mat::Zero(3, 3);
            const double c = std::cos(p[0]), si = std::sin(p[0]);
            g(0, 0) = 1.0;
            g(1, 1) = c * c;
            g(2, 2) = si * si;
            return g;
        };
        total.exact_distance = [](const Vec& p, const Vec& q) {
            const double dot = std::cos(p[0]) * std::cos(q[0]) * std::cos(p[1] - q[1]) +
                               std::sin(p[0]) * std::sin(q[0]) * std::cos(p[2] - q[2]);
            return std::acos(std::clamp(dot, -1.0, 1.0));
        };
        s.total = total;
        s.projection = [](const Vec& p) {
            Vec x(2);
            x << 2.0 * p[0], p[1] - p[2];
            return x;
        };
        return s;
    }
    throw InvalidArgument("unknown builtin submersion '" + name + "'");
}

std::vector<std::string> submersion_names() { return {"product", "warped", "hopf-chart"}; }

}  // namespace warpgeo::builtins
