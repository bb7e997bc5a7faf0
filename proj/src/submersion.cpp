#include "warpgeo/submersion.hpp"

#include <cmath>

#include "warpgeo/fd.hpp"
#include "warpgeo/optim.hpp"

namespace warpgeo::sub {

Mat RiemannianSubmersion::dpi(const Vec& q) const {
    auto eval = [&](const Vec& w) { return projection(w); };
    return fd::jacobian(eval, q, proj_fd);
}

Vec RiemannianSubmersion::project(const Vec& q) const {
    Vec x = projection(q);
    if (x.size() != base.dim) throw DimensionError("projection arity mismatch");
    return x;
}

namespace {

// Kernel basis of dpi as the right singular vectors of the smallest
// singular values.
Mat kernel_basis(const Mat& dpi, int fiber_dim) {
    Eigen::JacobiSVD<Mat> svd(dpi, Eigen::ComputeFullV);
    const int n = static_cast<int>(dpi.cols());
    if (svd.rank() > n - fiber_dim ||
        svd.singularValues().head(n - fiber_dim).minCoeff() < 1e-8)
        throw NotASubmersion("projection differential does not have maximal rank");
    return svd.matrixV().rightCols(fiber_dim);
}

}  // namespace

Mat RiemannianSubmersion::vertical_projector(const Vec& q) const {
    Mat K = kernel_basis(dpi(q), fiber_dim);
    Mat G = total.eval(q);
    Mat KtG = K.transpose() * G;
    return K * (KtG * K).ldlt().solve(KtG);
}

Mat RiemannianSubmersion::horizontal_projector(const Vec& q) const {
    return Mat::Identity(total.dim, total.dim) - vertical_projector(q);
}

Vec RiemannianSubmersion::horizontal_lift(const Vec& q, const Vec& base_vec) const {
    Mat P = dpi(q);
    Mat K = kernel_basis(P, fiber_dim);
    Mat G = total.eval(q);
    Mat sys(total.dim, total.dim);
    sys.topRows(base.dim) = P;
    sys.bottomRows(fiber_dim) = K.transpose() * G;
    Vec rhs = Vec::Zero(total.dim);
    rhs.head(base.dim) = base_vec;
    return sys.fullPivLu().solve(rhs);
}

RiemannianSubmersion from_warped(const wp::WarpedProduct& w) {
    RiemannianSubmersion s;
    s.total = wp::assemble_metric(w);
    s.base = w.base;
    s.fiber_dim = w.fiber_dim();
    s.name = "pi_X(" + (w.name.empty() ? std::string("warped") : w.name) + ")";
    const int nx = w.base_dim();
    s.projection = [nx](const Vec& q) { return Vec(q.head(nx)); };
    return s;
}

SubmersionCheck verify_submersion(const RiemannianSubmersion& s, int samples, Rng rng) {
    SubmersionCheck out;
    out.max_rank_defect = 0.0;
    out.max_isometry_error = 0.0;
    QuasiRandom qr(s.total.dim, rng.child("verify"));
    for (int k = 0; k < samples; ++k) {
        Vec q = qr.next_in_box(s.total.chart, 0.02);
        Mat P = s.dpi(q);
        Eigen::JacobiSVD<Mat> svd(P);
        const double smin = svd.singularValues().minCoeff();
        out.max_rank_defect = std::max(out.max_rank_defect, smin < 1e-8 ? 1.0 : 0.0);
        if (smin < 1e-8) {
            out.witness = q;
            throw NotASubmersion("rank collapse of the projection differential");
        }
        // horizontal isometry via Gram matrices of a lifted base frame
        Mat G = s.total.eval(q);
        Mat gX = s.base.eval(s.project(q));
        Mat lifts(s.total.dim, s.base.dim);
        for (int i = 0; i < s.base.dim; ++i)
            lifts.col(i) = s.horizontal_lift(q, Vec::Unit(s.base.dim, i));
        Mat upstairs = lifts.transpose() * G * lifts;
        const double err = (upstairs - gX).cwiseAbs().maxCoeff();
        if (err > out.max_isometry_error) {
            out.max_isometry_error = err;
            out.witness = q;
        }
    }
    out.pass = out.max_isometry_error < 1e-6;
    return out;
}

namespace {

// Constant extension of a vector, projected pointwise to the requested part;
// tensoriality of T and A makes the extension choice irrelevant.
VectorField projected_extension(const RiemannianSubmersion& s, const Vec& value, bool vertical) {
    VectorField f;
    f.dim = s.total.dim;
    f.fd = FdConfig{1e-3, 4};
    f.name = vertical ? "ver-ext" : "hor-ext";
    const RiemannianSubmersion* sp = &s;
    f.comps = [sp, value, vertical](const Vec& q) {
        Mat P = sp->vertical_projector(q);
        return vertical ? Vec(P * value) : Vec(value - P * value);
    };
    return f;
}

}  // namespace

Vec tensor_T(const RiemannianSubmersion& s, const Vec& xi, const Vec& eta, const Vec& q) {
    Mat Pv = s.vertical_projector(q);
    const Vec xi_v = Pv * xi;
    VectorField eta_ver = projected_extension(s, eta, true);
    VectorField eta_hor = projected_extension(s, eta, false);
    Vec d_ver, d_hor;
    try {
        d_ver = geo::covariant_derivative(s.total, eta_ver, xi_v, q);
        d_hor = geo::covariant_derivative(s.total, eta_hor, xi_v, q);
    } catch (const OutOfChart&) {
        throw ExtensionFailure("field extension left the chart near the evaluation point");
    }
    return (d_ver - Pv * d_ver) + Pv * d_hor;
}

Vec tensor_A(const RiemannianSubmersion& s, const Vec& xi, const Vec& eta, const Vec& q) {
    Mat Pv = s.vertical_projector(q);
    const Vec xi_h = xi - Pv * xi;
    VectorField eta_ver = projected_extension(s, eta, true);
    VectorField eta_hor = projected_extension(s, eta, false);
    Vec d_ver, d_hor;
    try {
        d_hor = geo::covariant_derivative(s.total, eta_hor, xi_h, q);
        d_ver = geo::covariant_derivative(s.total, eta_ver, xi_h, q);
    } catch (const OutOfChart&) {
        throw ExtensionFailure("field extension left the chart near the evaluation point");
    }
    return Pv * d_hor + (d_ver - Pv * d_ver);
}

HorizontalCurvature horizontal_sectional_curvature(const RiemannianSubmersion& s, const Vec& q,
                                                   const Vec& X, const Vec& Y) {
    HorizontalCurvature out;
    Mat G = s.total.eval(q);
    const double gram =
        X.dot(G * X) * Y.dot(G * Y) - std::pow(X.dot(G * Y), 2);
    if (gram < 1e-12) throw DegeneratePlane("horizontal plane is degenerate");
    out.total = geo::sectional_curvature(s.total, q, X, Y);
    Mat P = s.dpi(q);
    out.base = geo::sectional_curvature(s.base, s.project(q), P * X, P * Y);
    const Vec a = tensor_A(s, X, Y, q);
    out.a_term = 3.0 * a.dot(G * a) / gram;
    out.residual = std::abs(out.total - (out.base - out.a_term));
    return out;
}

namespace {

Mat horizontal_frame(const RiemannianSubmersion& s, const Vec& q) {
    Mat G = s.total.eval(q);
    Mat lifts(s.total.dim, s.base.dim);
    for (int i = 0; i < s.base.dim; ++i)
        lifts.col(i) = s.horizontal_lift(q, Vec::Unit(s.base.dim, i));
    return geo::orthonormalize(G, lifts);
}

}  // namespace

double sec_hor_min(const RiemannianSubmersion& s, const ChartDomain& region, int budget,
                   Rng rng) {
    if (s.base.dim < 2) throw DimensionError("horizontal planes need a base of dimension >= 2");
    const int nx = s.base.dim;
    const int plane_params = (nx == 2) ? 0 : 2 * nx;
    ChartDomain joint = region;
    for (int k = 0; k < plane_params; ++k) joint.bounds.push_back({-1.0, 1.0});
    joint.dim = region.dim + plane_params;

    Objective obj = [&](const Vec& z) {
        Vec q = z.head(region.dim);
        Mat H = horizontal_frame(s, q);
        Vec X, Y;
        if (nx == 2) {
            X = H.col(0);
            Y = H.col(1);
        } else {
            Vec ca = z.segment(region.dim, nx), cb = z.tail(nx);
            X = H * ca;
            Y = H * cb;
        }
        return geo::sectional_curvature(s.total, q, X, Y);
    };
    auto est = estimate_extremum(obj, joint, ExtremumMode::Inf, budget, rng.child("sec_hor"));
    return est.value;
}

double basic_hessian_check(const RiemannianSubmersion& s, const ScalarField& F, const Vec& q,
                           const Vec& X, const Vec& Y) {
    ScalarField lifted;
    lifted.dim = s.total.dim;
    lifted.name = F.name + "^h";
    lifted.fd = F.fd;
    const RiemannianSubmersion* sp = &s;
    const ScalarField* Fp = &F;
    lifted.f = [sp, Fp](const Vec& w) { return (*Fp)(sp->project(w)); };

    Mat up = geo::hessian(s.total, lifted, q);
    Mat down = geo::hessian(s.base, F, s.project(q));
    Mat P = s.dpi(q);
    return std::abs(X.dot(up * Y) - (P * X).dot(down * (P * Y)));
}

double hilbert_schmidt_sum(const Mat& map, const Mat& gram1, const Mat& gram2,
                           const Mat& family) {
    Mat gramcheck = family.transpose() * gram1 * family;
    if ((gramcheck - Mat::Identity(family.cols(), family.cols())).cwiseAbs().maxCoeff() > 1e-9)
        throw NotOrthonormal("family is not orthonormal for the source inner product");
    double sum = 0.0;
    for (int i = 0; i < family.cols(); ++i) {
        const Vec img = map * family.col(i);
        sum += img.dot(gram2 * img);
    }
    return sum;
}

double submersion_hessian_lift(const RiemannianSubmersion& s, const Immersion& imm,
                               const ScalarField& F, const Vec& u, const Vec& e) {
    if (imm.ambient.dim != s.total.dim)
        throw AmbientMismatch("immersion ambient does not match the submersion total space");
    const Vec q = imm.at(u);
    const Vec x = s.project(q);
    const Vec xi = imm.dphi(u) * e;
    Mat Pv = s.vertical_projector(q);
    const Vec xi_ver = Pv * xi;
    const Vec xi_hor = xi - xi_ver;
    Mat G = s.total.eval(q);
    Mat P = s.dpi(q);

    const Vec gradF_base = geo::gradient(s.base, F, x);
    const Vec gradFh = s.horizontal_lift(q, gradF_base);
    Mat hessF = geo::hessian(s.base, F, x);
    const Vec S = second_fundamental_form(imm, u, e, e).components;

    const Vec xs = P * xi_hor;
    const double base_term = xs.dot(hessF * xs);
    const Vec a_val = tensor_A(s, xi_hor, gradFh, q);
    const Vec t_val = tensor_T(s, xi_ver, gradFh, q);
    return base_term + 2.0 * a_val.dot(G * xi_ver) + t_val.dot(G * xi_ver) +
           gradFh.dot(G * S);
}

TensorSups tensor_sups(const RiemannianSubmersion& s, const ChartDomain& region, int budget,
                       Rng rng) {
    const int n = s.total.dim;
    ChartDomain joint = region;
    for (int k = 0; k < 2 * n; ++k) joint.bounds.push_back({-1.0, 1.0});
    joint.dim = region.dim + 2 * n;

    auto norm_pair = [&](const Vec& z, Vec& q, Vec& xi, Vec& eta) -> bool {
        q = z.head(region.dim);
        xi = z.segment(region.dim, n);
        eta = z.tail(n);
        Mat G = s.total.eval(q);
        const double nx = std::sqrt(xi.dot(G * xi)), ne = std::sqrt(eta.dot(G * eta));
        if (nx < 1e-6 || ne < 1e-6) return false;
        xi /= nx;
        eta /= ne;
        return true;
    };

    TensorSups out;
    Objective obj_t = [&](const Vec& z) {
        Vec q, xi, eta;
        if (!norm_pair(z, q, xi, eta)) return 0.0;
        const Vec t = tensor_T(s, xi, eta, q);
        Mat G = s.total.eval(q);
        return std::sqrt(std::max(0.0, t.dot(G * t)));
    };
    Objective obj_a = [&](const Vec& z) {
        Vec q, xi, eta;
        if (!norm_pair(z, q, xi, eta)) return 0.0;
        const Vec a = tensor_A(s, xi, eta, q);
        Mat G = s.total.eval(q);
        return std::sqrt(std::max(0.0, a.dot(G * a)));
    };
    auto t_est = estimate_extremum(obj_t, joint, ExtremumMode::Sup, budget, rng.child("tau0"));
    auto a_est = estimate_extremum(obj_a, joint, ExtremumMode::Sup, budget, rng.child("alpha0"));
    out.tau0 = t_est.value;
    out.alpha0 = a_est.value;
    out.tau_witness = t_est.witness;
    out.alpha_witness = a_est.witness;
    return out;
}

}  // namespace warpgeo::sub
