#pragma once

#include <functional>
#include <type_traits>

#include "warpgeo/types.hpp"

namespace warpgeo::fd {

// Central finite differences on functions of chart coordinates. Works for
// any return type with +, -, scalar *; order 2 and 4 stencils. Results are
// materialized eagerly so Eigen expression templates never outlive their
// operands.

template <class F>
auto partial(F&& f, const Vec& p, int i, const FdConfig& cfg) {
    using R = std::decay_t<decltype(f(p))>;
    const double h = cfg.step;
    Vec pp = p, pm = p;
    pp[i] += h;
    pm[i] -= h;
    if (cfg.order >= 4) {
        Vec pp2 = p, pm2 = p;
        pp2[i] += 2 * h;
        pm2[i] -= 2 * h;
        R a = f(pm2);
        R b = f(pp2);
        R c = f(pp);
        R d = f(pm);
        R num = a - b + 8.0 * c - 8.0 * d;
        R out = num * (1.0 / (12.0 * h));
        return out;
    }
    R a = f(pp);
    R b = f(pm);
    R out = (a - b) * (1.0 / (2.0 * h));
    return out;
}

// Pure second derivative d^2/dx_i^2.
template <class F>
auto second_pure(F&& f, const Vec& p, int i, const FdConfig& cfg) {
    using R = std::decay_t<decltype(f(p))>;
    const double h = cfg.step;
    Vec pp = p, pm = p;
    pp[i] += h;
    pm[i] -= h;
    R fp = f(pp);
    R fm = f(pm);
    R f0 = f(p);
    if (cfg.order >= 4) {
        Vec pp2 = p, pm2 = p;
        pp2[i] += 2 * h;
        pm2[i] -= 2 * h;
        R fp2 = f(pp2);
        R fm2 = f(pm2);
        R num = 16.0 * fp + 16.0 * fm - 30.0 * f0 - fp2 - fm2;
        R out = num * (1.0 / (12.0 * h * h));
        return out;
    }
    R num = fp - 2.0 * f0 + fm;
    R out = num * (1.0 / (h * h));
    return out;
}

// Mixed second derivative d^2/dx_i dx_j (i != j).
template <class F>
auto second_mixed(F&& f, const Vec& p, int i, int j, const FdConfig& cfg) {
    using R = std::decay_t<decltype(f(p))>;
    const double h = cfg.step;
    if (cfg.order >= 4) {
        // fourth-order first derivative in i applied to the same in j
        auto dj = [&](const Vec& q) { return partial(f, q, j, cfg); };
        return partial(dj, p, i, cfg);
    }
    Vec a = p, b = p, c = p, d = p;
    a[i] += h;
    a[j] += h;
    b[i] += h;
    b[j] -= h;
    c[i] -= h;
    c[j] += h;
    d[i] -= h;
    d[j] -= h;
    R fa = f(a);
    R fb = f(b);
    R fc = f(c);
    R fd_ = f(d);
    R num = fa - fb - fc + fd_;
    R out = num * (1.0 / (4.0 * h * h));
    return out;
}

template <class F>
auto second(F&& f, const Vec& p, int i, int j, const FdConfig& cfg) {
    return i == j ? second_pure(f, p, i, cfg) : second_mixed(f, p, i, j, cfg);
}

// Gradient of a scalar-valued callable as a coordinate vector.
template <class F>
Vec gradient(F&& f, const Vec& p, const FdConfig& cfg) {
    Vec d(p.size());
    for (int i = 0; i < p.size(); ++i) d[i] = partial(f, p, i, cfg);
    return d;
}

// Full coordinate Hessian of a scalar-valued callable. Symmetric by stencil.
template <class F>
Mat hessian(F&& f, const Vec& p, const FdConfig& cfg) {
    const int n = static_cast<int>(p.size());
    Mat h(n, n);
    for (int i = 0; i < n; ++i) {
        h(i, i) = second_pure(f, p, i, cfg);
        for (int j = i + 1; j < n; ++j) h(i, j) = h(j, i) = second_mixed(f, p, i, j, cfg);
    }
    return h;
}

// Jacobian of a vector-valued callable: (output dim) x (input dim).
template <class F>
Mat jacobian(F&& f, const Vec& p, const FdConfig& cfg) {
    const int n = static_cast<int>(p.size());
    Mat J;
    for (int i = 0; i < n; ++i) {
        Vec col = partial(f, p, i, cfg);
        if (J.size() == 0) J.resize(col.size(), n);
        J.col(i) = col;
    }
    return J;
}

}  // namespace warpgeo::fd
