#include "warpgeo/warped.hpp"

#include <cmath>

#include "warpgeo/fd.hpp"

namespace warpgeo::wp {

BasicField BasicField::constant(FieldKind kind, const Vec& comps) {
    BasicField b;
    b.kind = kind;
    b.field.dim = static_cast<int>(comps.size());
    b.field.name = "const";
    b.field.comps = [comps](const Vec&) { return comps; };
    return b;
}

double WarpedProduct::psi_at(const Vec& x) const {
    const double v = psi(x);
    if (!(v > 0)) throw NonpositiveWarp("warping function nonpositive at sampled base point");
    return v;
}

Vec WarpedProduct::grad_psi(const Vec& x) const { return geo::gradient(base, psi, x); }

Vec WarpedProduct::grad_psi_over_psi(const Vec& x) const { return grad_psi(x) / psi_at(x); }

double WarpedProduct::dpsi_along(const Vec& x, const Vec& X) const {
    auto eval = [&](const Vec& q) { return psi(q); };
    return fd::gradient(eval, x, psi.fd).dot(X);
}

double WarpedProduct::inner(const Vec& q, const Vec& xi, const Vec& eta) const {
    const Vec x = base_part(q), v = fiber_part(q);
    const double p2 = psi_at(x) * psi_at(x);
    const Vec xh = xi.head(base.dim), xv = xi.tail(fiber.dim);
    const Vec eh = eta.head(base.dim), ev = eta.tail(fiber.dim);
    return xh.dot(base.eval(x) * eh) + p2 * xv.dot(fiber.eval(v) * ev);
}

MetricField assemble_metric(const WarpedProduct& w) {
    MetricField m;
    m.dim = w.total_dim();
    m.name = w.name.empty() ? "warped" : w.name;
    m.chart = w.product_chart();
    m.fd = w.base.fd;
    const WarpedProduct wc = w;
    m.g = [wc](const Vec& q) {
        const Vec x = wc.base_part(q), v = wc.fiber_part(q);
        const double p = wc.psi_at(x);
        Mat g = Mat::Zero(wc.total_dim(), wc.total_dim());
        g.topLeftCorner(wc.base_dim(), wc.base_dim()) = wc.base.eval(x);
        g.bottomRightCorner(wc.fiber_dim(), wc.fiber_dim()) = p * p * wc.fiber.eval(v);
        return g;
    };
    return m;
}

SplitVector connection_mixed(const WarpedProduct& w, const Vec& X_basic, const Vec& V_basic,
                             const Vec& q) {
    const Vec x = w.base_part(q);
    const double coef = w.dpsi_along(x, X_basic) / w.psi_at(x);
    return {Vec::Zero(w.base_dim()), coef * V_basic};
}

SplitVector connection_vertical(const WarpedProduct& w, const BasicField& V, const BasicField& W,
                                const Vec& q) {
    if (V.kind != FieldKind::VBasic || W.kind != FieldKind::VBasic)
        throw KindMismatch("connection_vertical expects v-basic fields");
    const Vec x = w.base_part(q), v = w.fiber_part(q);
    const Vec Vv = V.field(v), Wv = W.field(v);

    // fiber part: nabla^V_V W, with the derivative term of the W field
    Tensor3 gamma = geo::christoffel(w.fiber, v);
    auto weval = [&](const Vec& y) { return W.field(y); };
    Mat dW = fd::jacobian(weval, v, W.field.fd);
    Vec vert(w.fiber_dim());
    for (int k = 0; k < w.fiber_dim(); ++k) {
        double s = Vv.dot(dW.row(k));
        for (int i = 0; i < w.fiber_dim(); ++i)
            for (int j = 0; j < w.fiber_dim(); ++j) s += gamma(k, i, j) * Vv[i] * Wv[j];
        vert[k] = s;
    }

    const double p = w.psi_at(x);
    const double gm_vw = p * p * Vv.dot(w.fiber.eval(v) * Wv);
    Vec hor = -gm_vw * w.grad_psi_over_psi(x);
    return {hor, vert};
}

SplitVector connection_vertical(const WarpedProduct& w, const Vec& V, const Vec& W,
                                const Vec& q) {
    return connection_vertical(w, BasicField::constant(FieldKind::VBasic, V),
                               BasicField::constant(FieldKind::VBasic, W), q);
}

TangentVector fiber_second_fundamental_form(const WarpedProduct& w, const Vec& V, const Vec& W,
                                            const Vec& q) {
    const Vec x = w.base_part(q), v = w.fiber_part(q);
    const double p = w.psi_at(x);
    const double gm_vw = p * p * V.dot(w.fiber.eval(v) * W);
    return {q, -gm_vw * w.grad_psi_over_psi(x)};
}

TangentVector fiber_mean_curvature(const WarpedProduct& w, const Vec& q) {
    const Vec x = w.base_part(q);
    return {q, -static_cast<double>(w.fiber_dim()) * w.grad_psi_over_psi(x)};
}

double divergence_lift(const WarpedProduct& w, const BasicField& field, const Vec& q) {
    const Vec x = w.base_part(q), v = w.fiber_part(q);
    if (field.kind == FieldKind::HBasic) {
        if (field.field.dim != w.base_dim())
            throw KindMismatch("h-basic field dimension does not match the base");
        const double div_base = geo::divergence(w.base, field.field, x);
        const double xpsi = w.dpsi_along(x, field.field(x));
        return div_base + w.fiber_dim() * xpsi / w.psi_at(x);
    }
    if (field.field.dim != w.fiber_dim())
        throw KindMismatch("v-basic field dimension does not match the fiber");
    return geo::divergence(w.fiber, field.field, v);
}

SplitVector lift_gradient(const WarpedProduct& w, const ScalarField& fn, LiftKind kind,
                          const Vec& q) {
    const Vec x = w.base_part(q), v = w.fiber_part(q);
    if (kind == LiftKind::Base)
        return {geo::gradient(w.base, fn, x), Vec::Zero(w.fiber_dim())};
    const double p = w.psi_at(x);
    return {Vec::Zero(w.base_dim()), geo::gradient(w.fiber, fn, v) / (p * p)};
}

double lift_hessian(const WarpedProduct& w, const ScalarField& fn, LiftKind kind,
                    const SplitVector& xi, const SplitVector& eta, const Vec& q) {
    const Vec x = w.base_part(q), v = w.fiber_part(q);
    auto eval = [&](const Vec& y) { return fn(y); };
    if (kind == LiftKind::Base) {
        // Hess F^h = Hess^X F on horizontal blocks, a grad psi multiple of
        // g^M on vertical blocks, no cross term.
        Mat hx = geo::hessian(w.base, fn, x);
        const Vec gradF = geo::gradient(w.base, fn, x);
        const double coef = gradF.dot(w.base.eval(x) * w.grad_psi_over_psi(x));
        const double p = w.psi_at(x);
        const double gm_vv = p * p * xi.ver.dot(w.fiber.eval(v) * eta.ver);
        return xi.hor.dot(hx * eta.hor) + coef * gm_vv;
    }
    // Hess G^v: fiber Hessian on vertical blocks, zero on horizontal blocks,
    // and the -X(psi)/psi V(G) cross term.
    Mat hv = geo::hessian(w.fiber, fn, v);
    const Vec dG = fd::gradient(eval, v, fn.fd);
    const double p = w.psi_at(x);
    const double cross_xi = -w.dpsi_along(x, xi.hor) / p * dG.dot(eta.ver);
    const double cross_eta = -w.dpsi_along(x, eta.hor) / p * dG.dot(xi.ver);
    return xi.ver.dot(hv * eta.ver) + cross_xi + cross_eta;
}

double lift_laplacian(const WarpedProduct& w, const ScalarField& fn, LiftKind kind,
                      const Vec& q) {
    const Vec x = w.base_part(q), v = w.fiber_part(q);
    if (kind == LiftKind::Base) {
        const Vec gradF = geo::gradient(w.base, fn, x);
        const double coupling = gradF.dot(w.base.eval(x) * w.grad_psi_over_psi(x));
        return geo::laplacian(w.base, fn, x) + w.fiber_dim() * coupling;
    }
    const double p = w.psi_at(x);
    return geo::laplacian(w.fiber, fn, v) / (p * p);
}

}  // namespace warpgeo::wp
