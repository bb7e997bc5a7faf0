#include "warpgeo/optim.hpp"

#include <cmath>

namespace warpgeo {

namespace {

double safe_eval(const Objective& f, const Vec& x, int& evals) {
    ++evals;
    try {
        double v = f(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    } catch (const Error&) {
        return std::numeric_limits<double>::infinity();
    }
}

LocalMinResult nelder_mead_impl(const Objective& f, const Vec& x0, const ChartDomain* box,
                                double scale, int max_iter, double tol) {
    const int n = static_cast<int>(x0.size());
    int evals = 0;
    auto clamp = [&](const Vec& v) { return box ? box->clamp(v, 0.0) : v; };

    std::vector<Vec> pts;
    std::vector<double> vals;
    pts.push_back(clamp(x0));
    vals.push_back(safe_eval(f, pts[0], evals));
    for (int i = 0; i < n; ++i) {
        Vec v = x0;
        double h = scale;
        if (box) {
            const auto [lo, hi] = box->bounds[i];
            h = std::min(scale, 0.25 * (hi - lo));
        }
        v[i] += h;
        v = clamp(v);
        if ((v - pts[0]).norm() < 1e-14) {
            v = x0;
            v[i] -= h;
            v = clamp(v);
        }
        pts.push_back(v);
        vals.push_back(safe_eval(f, v, evals));
    }

    std::vector<int> order(pts.size());
    for (int it = 0; it < max_iter; ++it) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return vals[a] < vals[b]; });
        const int best = order.front(), worst = order.back(), second_worst = order[n - 1];
        if (std::isfinite(vals[worst]) && vals[worst] - vals[best] < tol) break;

        Vec centroid = Vec::Zero(n);
        for (int k = 0; k < n; ++k) centroid += pts[order[k]];
        centroid /= n;

        auto try_point = [&](double coef) {
            Vec cand = clamp(centroid + coef * (pts[worst] - centroid));
            return std::make_pair(cand, safe_eval(f, cand, evals));
        };

        auto [refl, frefl] = try_point(-1.0);
        if (frefl < vals[order[0]]) {
            auto [exp_, fexp] = try_point(-2.0);
            if (fexp < frefl) {
                pts[worst] = exp_;
                vals[worst] = fexp;
            } else {
                pts[worst] = refl;
                vals[worst] = frefl;
            }
        } else if (frefl < vals[second_worst]) {
            pts[worst] = refl;
            vals[worst] = frefl;
        } else {
            auto [con, fcon] = try_point(0.5);
            if (fcon < vals[worst]) {
                pts[worst] = con;
                vals[worst] = fcon;
            } else {
                for (size_t k = 1; k < pts.size(); ++k) {
                    int idx = order[k];
                    pts[idx] = clamp(pts[best] + 0.5 * (pts[idx] - pts[best]));
                    vals[idx] = safe_eval(f, pts[idx], evals);
                }
            }
        }
    }

    int best = 0;
    for (size_t k = 1; k < pts.size(); ++k)
        if (vals[k] < vals[best]) best = static_cast<int>(k);
    return {pts[best], vals[best], evals};
}

}  // namespace

LocalMinResult nelder_mead_box(const Objective& f, const Vec& x0, const ChartDomain& box,
                               double scale, int max_iter, double tol) {
    return nelder_mead_impl(f, x0, &box, scale, max_iter, tol);
}

LocalMinResult nelder_mead(const Objective& f, const Vec& x0, double scale, int max_iter,
                           double tol) {
    return nelder_mead_impl(f, x0, nullptr, scale, max_iter, tol);
}

ExtremumEstimate estimate_extremum(const Objective& f, const ChartDomain& box,
                                   ExtremumMode mode, int budget, Rng rng,
                                   int refine_candidates, int refine_iter) {
    if (budget < 1) throw EmptyRegion("extremum estimation with empty budget");
    const double sign = (mode == ExtremumMode::Sup) ? -1.0 : 1.0;
    Objective obj = [&](const Vec& x) { return sign * f(x); };

    QuasiRandom qr(box.dim, rng.child("quasi"));
    int evals = 0;
    std::vector<std::pair<double, Vec>> cand;
    for (int k = 0; k < budget; ++k) {
        Vec p = qr.next_in_box(box);
        double v = safe_eval(obj, p, evals);
        if (std::isfinite(v)) cand.emplace_back(v, p);
    }
    if (cand.empty()) throw EmptyRegion("no admissible samples in region");
    std::stable_sort(cand.begin(), cand.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    double best_v = cand.front().first;
    Vec best_x = cand.front().second;
    const int n_ref = std::min<int>(refine_candidates, static_cast<int>(cand.size()));
    for (int k = 0; k < n_ref; ++k) {
        double scale = 0.0;
        for (const auto& [lo, hi] : box.bounds) scale = std::max(scale, 0.05 * (hi - lo));
        auto res = nelder_mead_box(obj, cand[k].second, box, scale, refine_iter);
        if (res.value < best_v) {
            best_v = res.value;
            best_x = res.x;
        }
    }
    return {sign * best_v, best_x, budget};
}

GaussNewtonResult gauss_newton(const std::function<Vec(const Vec&)>& residual,
                               const std::function<Mat(const Vec&)>& jacobian, Vec x0,
                               int max_iter, double tol2) {
    Vec x = std::move(x0);
    Vec r = residual(x);
    double r2 = r.squaredNorm();
    double lambda = 1e-8;
    for (int it = 0; it < max_iter && r2 > tol2; ++it) {
        Mat J = jacobian(x);
        Mat JtJ = J.transpose() * J;
        Vec g = J.transpose() * r;
        bool stepped = false;
        for (int damp = 0; damp < 16; ++damp) {
            Mat H = JtJ + lambda * Mat::Identity(JtJ.rows(), JtJ.cols());
            Vec delta = H.ldlt().solve(g);
            Vec xn = x - delta;
            Vec rn = residual(xn);
            double rn2 = rn.squaredNorm();
            if (rn2 < r2) {
                x = xn;
                r = rn;
                r2 = rn2;
                lambda = std::max(lambda * 0.3, 1e-12);
                stepped = true;
                break;
            }
            lambda *= 10.0;
        }
        if (!stepped) break;
    }
    return {x, r2, r2 <= tol2};
}

LocalMinResult sphere_minimize(const Objective& f, const std::function<Vec(const Vec&)>& grad,
                               const Mat& gram, Vec v0, int max_iter) {
    auto renorm = [&](Vec v) {
        double n2 = v.dot(gram * v);
        return Vec(v / std::sqrt(std::max(n2, 1e-300)));
    };
    Vec v = renorm(std::move(v0));
    double fv = f(v);
    int evals = 1;
    double step = 0.5;
    for (int it = 0; it < max_iter; ++it) {
        Vec g = grad(v);
        // remove the radial component (w.r.t. the gram inner product)
        Vec gv = gram * v;
        g -= (g.dot(v) / gv.dot(v)) * gv;
        if (g.norm() < 1e-14) break;
        bool accepted = false;
        for (int bt = 0; bt < 30; ++bt) {
            Vec cand = renorm(v - step * g);
            double fc = f(cand);
            ++evals;
            if (fc < fv - 1e-16) {
                v = cand;
                fv = fc;
                step = std::min(step * 1.6, 1.0);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
    }
    return {v, fv, evals};
}

}  // namespace warpgeo
