#include "warpgeo/otsuki.hpp"

#include <cmath>

#include "warpgeo/optim.hpp"

namespace warpgeo::otsuki {

SymmetricBilinearForm SymmetricBilinearForm::make(std::vector<Mat> betas, Mat inner_V,
                                                  Mat inner_W) {
    SymmetricBilinearForm f;
    f.n2 = static_cast<int>(betas.size());
    if (f.n2 < 1) throw DimensionError("a form needs at least one component matrix");
    f.n1 = static_cast<int>(betas[0].rows());
    for (auto& b : betas) {
        if (b.rows() != f.n1 || b.cols() != f.n1)
            throw DimensionError("component matrices must share the V dimension");
        if ((b - b.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, b.cwiseAbs().maxCoeff()))
            throw InvalidArgument("component matrices must be symmetric");
        b = 0.5 * (b + b.transpose());
    }
    f.betas = std::move(betas);
    f.inner_V = std::move(inner_V);
    f.inner_W = std::move(inner_W);
    if (f.inner_V.rows() != f.n1 || f.inner_W.rows() != f.n2)
        throw DimensionError("inner product sizes do not match the form");
    return f;
}

Vec SymmetricBilinearForm::eval(const Vec& v, const Vec& w) const {
    Vec out(n2);
    for (int k = 0; k < n2; ++k) out[k] = v.dot(betas[k] * w);
    return out;
}

double SymmetricBilinearForm::w_norm2(const Vec& w_value) const {
    return w_value.dot(inner_W * w_value);
}

DefinitenessResult definiteness_check(const SymmetricBilinearForm& form, uint64_t seed,
                                      int restarts, double threshold) {
    // q(v) = |beta(v,v)|_W^2, grad q = 4 sum_{kl} W_kl beta_l(v,v) beta_k v
    auto q = [&](const Vec& v) { return form.w_norm2(form.eval(v, v)); };
    auto grad = [&](const Vec& v) {
        Vec bv = form.eval(v, v);
        Vec wb = form.inner_W * bv;
        Vec g = Vec::Zero(form.n1);
        for (int k = 0; k < form.n2; ++k) g += 4.0 * wb[k] * (form.betas[k] * v);
        return g;
    };

    Rng rng(seed);
    DefinitenessResult best;
    best.min_norm = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        Vec v0 = rng.normal_vec(form.n1);
        auto res = sphere_minimize(q, grad, form.inner_V, v0);
        if (res.value < best.min_norm) {
            best.min_norm = res.value;
            best.witness = res.x;
        }
    }
    best.min_norm = std::sqrt(std::max(0.0, best.min_norm));
    best.definite = best.min_norm > threshold;
    return best;
}

namespace {

// Residual system for the pair search: v1 constrained to the unit sphere of
// V, v2 free. Rows: W^{1/2}-weighted diagonal difference, cross term, and
// the sphere constraint.
struct PairSystem {
    const SymmetricBilinearForm& form;
    Mat w_half;

    Vec residual(const Vec& z) const {
        const int n = form.n1;
        Vec v1 = z.head(n), v2 = z.tail(n);
        Vec diag = w_half * (form.eval(v1, v1) - form.eval(v2, v2));
        Vec cross = w_half * form.eval(v1, v2);
        Vec out(2 * form.n2 + 1);
        out << diag, cross, 0.5 * (form.v_norm2(v1) - 1.0);
        return out;
    }

    Mat jacobian(const Vec& z) const {
        const int n = form.n1;
        Vec v1 = z.head(n), v2 = z.tail(n);
        Mat J = Mat::Zero(2 * form.n2 + 1, 2 * n);
        for (int k = 0; k < form.n2; ++k) {
            Vec b1 = form.betas[k] * v1, b2 = form.betas[k] * v2;
            for (int kk = 0; kk < form.n2; ++kk) {
                // d diag_kk / d v1 = 2 Whalf_{kk,k} beta_k v1, etc.
                J.row(kk).head(n) += 2.0 * w_half(kk, k) * b1.transpose();
                J.row(kk).tail(n) -= 2.0 * w_half(kk, k) * b2.transpose();
                J.row(form.n2 + kk).head(n) += w_half(kk, k) * b2.transpose();
                J.row(form.n2 + kk).tail(n) += w_half(kk, k) * b1.transpose();
            }
        }
        J.row(2 * form.n2).head(n) = (form.inner_V * v1).transpose();
        return J;
    }
};

double pair_angle(const SymmetricBilinearForm& form, const Vec& v1, const Vec& v2) {
    const double n1 = std::sqrt(form.v_norm2(v1)), n2 = std::sqrt(form.v_norm2(v2));
    if (n1 < 1e-12 || n2 < 1e-12) return 0.0;
    const double c = std::clamp(v1.dot(form.inner_V * v2) / (n1 * n2), -1.0, 1.0);
    return std::acos(std::abs(c));  // angle to the nearest of +-v2
}

}  // namespace

OtsukiPair find_otsuki_pair(const SymmetricBilinearForm& form, const OtsukiOptions& opts) {
    if (form.n2 >= form.n1)
        throw DimensionError("the pair search needs dim W < dim V");
    auto def = definiteness_check(form, opts.seed, 32);
    if (!def.definite)
        throw InvalidArgument("form admits an asymptotic vector; the lemma does not apply");

    Eigen::SelfAdjointEigenSolver<Mat> es(form.inner_W);
    Mat w_half = es.operatorSqrt();
    PairSystem sys{form, w_half};

    auto objective = [&](const Vec& z) {
        Vec r = sys.residual(z);
        // keep the derivative-free stage away from collinear pairs
        const double ang = pair_angle(form, z.head(form.n1), z.tail(form.n1));
        const double barrier = ang < 10 * opts.min_angle
                                   ? std::pow(10 * opts.min_angle - ang, 2) * 10.0
                                   : 0.0;
        return r.squaredNorm() + barrier;
    };

    Rng rng(opts.seed);
    OtsukiPair best;
    best.residual = std::numeric_limits<double>::infinity();
    for (int r = 0; r < opts.restarts; ++r) {
        Vec v1 = rng.unit_vec(form.n1);
        Vec v2 = rng.unit_vec(form.n1);
        Vec z(2 * form.n1);
        z << v1, v2;
        // derivative-free local stage, then damped Gauss-Newton refinement
        auto nm = nelder_mead(objective, z, 0.4, 150);
        auto gn = gauss_newton([&](const Vec& y) { return sys.residual(y); },
                               [&](const Vec& y) { return sys.jacobian(y); }, nm.x, 80,
                               opts.residual_tol * 1e-4);
        Vec got1 = gn.x.head(form.n1), got2 = gn.x.tail(form.n1);
        if (pair_angle(form, got1, got2) < opts.min_angle) continue;

        // re-check by direct substitution, independent of the optimizer
        const double resid = form.w_norm2(form.eval(got1, got1) - form.eval(got2, got2)) +
                             form.w_norm2(form.eval(got1, got2));
        if (resid < best.residual) {
            best.v1 = got1;
            best.v2 = got2;
            best.residual = resid;
            best.restarts_used = r + 1;
            if (resid < opts.residual_tol) break;
        }
    }
    if (!(best.residual < opts.residual_tol))
        throw SearchFailed("otsuki pair search did not reach the residual floor (best " +
                           std::to_string(best.residual) + ")");

    // normalize: |v1| >= |v2| and |v1| = 1
    double l1 = std::sqrt(form.v_norm2(best.v1)), l2 = std::sqrt(form.v_norm2(best.v2));
    if (l2 > l1) {
        std::swap(best.v1, best.v2);
        std::swap(l1, l2);
    }
    best.v1 /= l1;
    best.v2 /= l1;
    best.residual = form.w_norm2(form.eval(best.v1, best.v1) - form.eval(best.v2, best.v2)) +
                    form.w_norm2(form.eval(best.v1, best.v2));
    return best;
}

}  // namespace warpgeo::otsuki
