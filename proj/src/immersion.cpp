#include "warpgeo/immersion.hpp"

#include <cmath>

#include "warpgeo/fd.hpp"

namespace warpgeo {

namespace {
constexpr double kRankTol = 1e-8;
}

Vec Immersion::at(const Vec& u) const {
    chart.require_inside(u, "immersion parameter");
    Vec q = map(u);
    if (q.size() != ambient.dim) throw DimensionError("immersion map arity mismatch");
    return q;
}

Mat Immersion::dphi(const Vec& u) const {
    auto eval = [&](const Vec& w) { return map(w); };
    return fd::jacobian(eval, u, fd);
}

Mat Immersion::induced_metric(const Vec& u) const {
    Mat J = dphi(u);
    Mat G = ambient.eval(at(u));
    Mat gm = J.transpose() * G * J;
    gm = 0.5 * (gm + gm.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> es(gm, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= kRankTol * kRankTol)
        throw RankDeficient("immersion differential loses rank at sampled point");
    return gm;
}

MetricField Immersion::induced_metric_field() const {
    MetricField m;
    m.dim = domain_dim;
    m.name = "induced(" + name + ")";
    m.chart = chart;
    m.fd = FdConfig{2e-3, 4};
    const Immersion self = *this;
    m.g = [self](const Vec& u) { return self.induced_metric(u); };
    return m;
}

Mat Immersion::tangent_frame(const Vec& u) const {
    Mat J = dphi(u);
    Mat gm = induced_metric(u);
    // columns of L^{-T} are g^M-orthonormal in M coordinates
    Eigen::LLT<Mat> llt(gm);
    if (llt.info() != Eigen::Success)
        throw RankDeficient("induced metric not positive definite");
    Mat L = llt.matrixL();
    return L.transpose().inverse();
}

Mat Immersion::normal_frame(const Vec& u) const {
    const int nA = ambient.dim, nM = domain_dim;
    Mat J = dphi(u);
    Mat G = ambient.eval(at(u));
    Mat tangent_ambient = J * tangent_frame(u);  // orthonormal tangent, ambient coords

    Mat frame(nA, nA);
    frame.leftCols(nM) = tangent_ambient;
    int col = nM;
    for (int i = 0; i < nA && col < nA; ++i) {
        Mat trial(nA, col + 1);
        trial.leftCols(col) = frame.leftCols(col);
        trial.col(col) = Vec::Unit(nA, i);
        try {
            frame.leftCols(col + 1) = geo::orthonormalize(G, trial);
            ++col;
        } catch (const DegeneratePlane&) {
        }
    }
    if (col != nA) throw RankDeficient("could not complete a normal frame");
    return frame.rightCols(nA - nM);
}

TangentVector second_fundamental_form(const Immersion& imm, const Vec& u, const Vec& e,
                                      const Vec& e2) {
    const int nA = imm.ambient.dim, nM = imm.domain_dim;
    const Vec q = imm.at(u);
    Mat J = imm.dphi(u);
    Mat G = imm.ambient.eval(q);
    Tensor3 gamma = geo::christoffel(imm.ambient, q);

    // coordinate second derivatives of the map, contracted with (e, e2)
    auto eval = [&](const Vec& w) { return imm.map(w); };
    Vec dd = Vec::Zero(nA);
    for (int i = 0; i < nM; ++i)
        for (int j = 0; j < nM; ++j) {
            if (e[i] == 0.0 || e2[j] == 0.0) continue;
            Vec dij = fd::second(eval, u, i, j, imm.fd);
            dd += e[i] * e2[j] * dij;
        }
    const Vec de = J * e, de2 = J * e2;
    Vec val = dd;
    for (int a = 0; a < nA; ++a) {
        double s = 0.0;
        for (int b = 0; b < nA; ++b)
            for (int c = 0; c < nA; ++c) s += gamma(a, b, c) * de[b] * de2[c];
        val[a] += s;
    }
    // normal projection; the tangential part carries the (discarded)
    // Levi-Civita term of the induced metric
    Mat N = imm.normal_frame(u);
    Vec out = Vec::Zero(nA);
    for (int k = 0; k < N.cols(); ++k) out += N.col(k).dot(G * val) * N.col(k);
    return {q, out};
}

TangentVector mean_curvature_vector(const Immersion& imm, const Vec& u) {
    Mat basis = imm.tangent_frame(u);
    Vec h = Vec::Zero(imm.ambient.dim);
    for (int i = 0; i < basis.cols(); ++i)
        h += second_fundamental_form(imm, u, basis.col(i), basis.col(i)).components;
    return {imm.at(u), h};
}

Vec composed_gradient(const Immersion& imm, const ScalarField& L, const Vec& u) {
    const Vec q = imm.at(u);
    auto eval = [&](const Vec& w) { return L(w); };
    Vec dL = fd::gradient(eval, q, L.fd);
    Mat J = imm.dphi(u);
    return imm.induced_metric(u).ldlt().solve(J.transpose() * dL);
}

double composed_hessian(const Immersion& imm, const ScalarField& L, const Vec& u, const Vec& e) {
    const Vec q = imm.at(u);
    const Vec de = imm.dphi(u) * e;
    Mat hessL = geo::hessian(imm.ambient, L, q);
    Vec gradL = geo::gradient(imm.ambient, L, q);
    Mat G = imm.ambient.eval(q);
    TangentVector S = second_fundamental_form(imm, u, e, e);
    return de.dot(hessL * de) + gradL.dot(G * S.components);
}

namespace {
const wp::WarpedProduct& require_warped(const Immersion& imm) {
    if (!imm.warped) throw AmbientNotWarped("operation needs a warped-product ambient");
    return *imm.warped;
}
}  // namespace

double hessian_lift_vertical(const Immersion& imm, const ScalarField& G, const Vec& u,
                             const Vec& e) {
    const auto& w = require_warped(imm);
    const Vec q = imm.at(u);
    const Vec x = w.base_part(q), v = w.fiber_part(q);
    const Vec de = imm.dphi(u) * e;
    const Vec eh = de.head(w.base_dim()), ev = de.tail(w.fiber_dim());

    auto eval = [&](const Vec& y) { return G(y); };
    const Vec gradG_fiber = geo::gradient(w.fiber, G, v);
    Mat hessG_fiber = geo::hessian(w.fiber, G, v);
    const Mat gV = w.fiber.eval(v);

    const Vec S_ver = second_fundamental_form(imm, u, e, e).components.tail(w.fiber_dim());
    const double cross = -2.0 * w.grad_psi_over_psi(x).dot(w.base.eval(x) * eh) *
                         gradG_fiber.dot(gV * ev);
    return cross + ev.dot(hessG_fiber * ev) + gradG_fiber.dot(gV * S_ver);
}

double hessian_lift_horizontal(const Immersion& imm, const ScalarField& F, const Vec& u,
                               const Vec& e) {
    const auto& w = require_warped(imm);
    const Vec q = imm.at(u);
    const Vec x = w.base_part(q), v = w.fiber_part(q);
    const Vec de = imm.dphi(u) * e;
    const Vec eh = de.head(w.base_dim()), ev = de.tail(w.fiber_dim());

    const Vec gradF = geo::gradient(w.base, F, x);
    Mat hessF = geo::hessian(w.base, F, x);
    const Mat gX = w.base.eval(x);
    const double p = w.psi_at(x);
    const double gm_vv = p * p * ev.dot(w.fiber.eval(v) * ev);

    const Vec S_hor = second_fundamental_form(imm, u, e, e).components.head(w.base_dim());
    return gradF.dot(gX * w.grad_psi_over_psi(x)) * gm_vv + eh.dot(hessF * eh) +
           gradF.dot(gX * S_hor);
}

double gauss_sectional_defect(const Immersion& imm, const Vec& u, const Vec& e1, const Vec& e2) {
    Mat gm = imm.induced_metric(u);
    const double a = e1.dot(gm * e1), b = e2.dot(gm * e2), c = e1.dot(gm * e2);
    const double gram = a * b - c * c;
    if (gram < 1e-12 * std::max(1.0, a * b))
        throw DegeneratePlane("gauss defect of a degenerate plane");
    const Vec q = imm.at(u);
    Mat G = imm.ambient.eval(q);
    const Vec s11 = second_fundamental_form(imm, u, e1, e1).components;
    const Vec s22 = second_fundamental_form(imm, u, e2, e2).components;
    const Vec s12 = second_fundamental_form(imm, u, e1, e2).components;
    return (s11.dot(G * s22) - s12.dot(G * s12)) / gram;
}

TangentSplit split_tangent(const Immersion& imm, const RadialContext& ctx, const Vec& u,
                           const Vec& e) {
    const auto& w = require_warped(imm);
    const Vec q = imm.at(u);
    const Vec x = w.base_part(q);
    const double dist = ctx.rho(x);
    if (dist > ctx.declared_inj_radius)
        throw OutsideDeclaredInjRadius("tangent split outside the declared injectivity radius");

    const Vec de = imm.dphi(u) * e;
    TangentSplit out;
    out.hor = de.head(w.base_dim());
    out.ver = de.tail(w.fiber_dim());
    const Mat gX = ctx.base ? ctx.base->eval(x) : w.base.eval(x);
    Vec grad_rho = geo::gradient(ctx.base ? *ctx.base : w.base, ctx.rho, x);
    grad_rho /= std::sqrt(grad_rho.dot(gX * grad_rho));  // exact Pythagoras below
    out.rho = out.hor.dot(gX * grad_rho) * grad_rho;
    out.perp = out.hor - out.rho;
    return out;
}

double vertical_energy(const Immersion& imm, const Vec& u) {
    const auto& w = require_warped(imm);
    const Vec q = imm.at(u);
    const Vec x = w.base_part(q), v = w.fiber_part(q);
    const double p2 = std::pow(w.psi_at(x), 2);
    const Mat gV = w.fiber.eval(v);
    Mat basis = imm.dphi(u) * imm.tangent_frame(u);
    double sum = 0.0;
    for (int i = 0; i < basis.cols(); ++i) {
        const Vec ev = basis.col(i).tail(w.fiber_dim());
        sum += p2 * ev.dot(gV * ev);
    }
    return sum;
}

}  // namespace warpgeo
