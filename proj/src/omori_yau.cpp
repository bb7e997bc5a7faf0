#include "warpgeo/omori_yau.hpp"

#include <cmath>

#include "warpgeo/fd.hpp"
#include "warpgeo/geometry.hpp"
#include "warpgeo/optim.hpp"

namespace warpgeo::oy {

HReport check_h_conditions(const GrowthFunction& h, double t_max, int grid) {
    HReport rep;

    // (1) h(0) > 0 and monotone nondecreasing, pointwise on a geometric grid
    rep.monotone.item = "h(0)>0 and h'>=0";
    const double h0 = h.h(0.0);
    bool mono = h0 > 0.0;
    std::vector<double> ts{0.0};
    for (int i = 0; i <= grid; ++i)
        ts.push_back(std::pow(10.0, -2.0 + (std::log10(t_max) + 2.0) * i / grid));
    double prev = h0;
    double worst_drop = 0.0;
    for (size_t i = 1; i < ts.size(); ++i) {
        const double v = h.h(ts[i]);
        worst_drop = std::min(worst_drop, v - prev);
        if (v < prev - 1e-12 * std::max(1.0, std::abs(prev))) mono = false;
        prev = v;
    }
    rep.monotone.observed = h0;
    rep.monotone.verdict = mono ? Verdict::Pass : Verdict::Fail;

    // (2) limsup of t h(sqrt t)/h(t): compare the ratio across the last two
    // decades of the horizon; certified limits override the window verdict
    rep.ratio.item = "limsup t h(sqrt t)/h(t) < inf";
    auto ratio = [&](double t) { return t * h.h(std::sqrt(t)) / h.h(t); };
    const double tail = ratio(t_max);
    const double earlier = ratio(t_max / 100.0);
    rep.ratio.observed = tail;
    rep.ratio.finite_horizon = true;
    if (h.certified_ratio_limsup) {
        rep.ratio.certified = true;
        rep.ratio.finite_horizon = false;
        rep.ratio.verdict =
            std::isfinite(*h.certified_ratio_limsup) ? Verdict::Pass : Verdict::Fail;
        rep.ratio.note = "analytic certificate";
    } else if (!std::isfinite(tail) || (tail > 2.0 * earlier && tail > 1e3)) {
        rep.ratio.verdict = Verdict::Fail;
        rep.ratio.note = "ratio still growing at the horizon";
    } else {
        rep.ratio.verdict = Verdict::Pass;
        rep.ratio.note = "bounded on the sampled window";
    }

    // (3) divergence of int dt/sqrt(h): decade increments of the lower
    // Riemann sum must not decay geometrically
    rep.integral.item = "int dt/sqrt(h) = inf";
    rep.integral.finite_horizon = true;
    if (h.certified_integral_diverges) {
        rep.integral.certified = true;
        rep.integral.finite_horizon = false;
        rep.integral.verdict = *h.certified_integral_diverges ? Verdict::Pass : Verdict::Fail;
        rep.integral.note = "analytic certificate";
    } else {
        double last_increment = 0.0, prev_increment = 0.0;
        double total = 0.0;
        const int decades = static_cast<int>(std::log10(t_max));
        for (int d = 0; d < decades; ++d) {
            const double lo = std::pow(10.0, d), hi = std::pow(10.0, d + 1);
            double inc = 0.0;
            const int steps = 64;
            for (int i = 0; i < steps; ++i) {
                const double a = lo + (hi - lo) * i / steps;
                const double b = lo + (hi - lo) * (i + 1) / steps;
                inc += (b - a) / std::sqrt(std::max(h.h(b), 1e-300));  // lower sum, h monotone
            }
            total += inc;
            prev_increment = last_increment;
            last_increment = inc;
        }
        rep.integral.observed = total;
        const bool sustained = prev_increment > 0 && last_increment > 0.4 * prev_increment;
        rep.integral.verdict = sustained ? Verdict::Pass : Verdict::Fail;
        rep.integral.note = sustained ? "decade increments sustained"
                                      : "decade increments decay; integral looks finite";
    }
    return rep;
}

namespace {

// Max eigenvalue of g^{-1} H (the matrix-inequality sense of Hess <= c g).
double max_relative_eigenvalue(const Mat& g, const Mat& H) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(H, g);
    return es.eigenvalues().maxCoeff();
}

}  // namespace

GammaReport check_gamma_conditions(const OYPair& pair, const MetricField& metric_M,
                                   const ExhaustionSamples& samples) {
    GammaReport rep;
    rep.proper.item = "gamma proper";
    rep.gradient.item = "|grad gamma| <= c sqrt(gamma)";
    rep.bound.item = pair.flavor == Flavor::Hessian
                         ? "Hess gamma <= c' sqrt(gamma h(sqrt gamma)) g"
                         : "Lap gamma <= c' sqrt(gamma h(sqrt gamma))";

    if (samples.compact_manifold) {
        // nothing lies outside a compact subset of a compact manifold
        for (auto* c : {&rep.proper, &rep.gradient, &rep.bound}) {
            c->verdict = Verdict::Pass;
            c->note = "vacuous: compact manifold";
        }
        return rep;
    }
    if (samples.rays.empty())
        throw NoDivergentRays("scenario declares no divergent rays for a noncompact manifold");

    // (4) properness along the declared divergent rays
    double min_terminal = std::numeric_limits<double>::infinity();
    bool increasing_tail = true;
    for (const auto& ray : samples.rays) {
        double prev = -std::numeric_limits<double>::infinity();
        for (int i = 0; i <= samples.count; ++i) {
            const double s =
                samples.s_lo + (samples.s_hi - samples.s_lo) * i / samples.count;
            const double v = pair.gamma(ray(s));
            if (i == samples.count) min_terminal = std::min(min_terminal, v);
            if (v < prev - 1e-9) increasing_tail = false;
            prev = v;
        }
    }
    rep.proper.observed = min_terminal;
    rep.proper.finite_horizon = true;
    rep.proper.verdict = (increasing_tail && min_terminal > 10.0 * pair.compact_cutoff)
                             ? Verdict::Pass
                             : Verdict::Inconclusive;
    rep.proper.note = "gamma grows along every declared ray (finite horizon)";

    // (5)/(6): pointwise on ray samples outside the cutoff
    double worst_grad = -std::numeric_limits<double>::infinity();
    double worst_bound = -std::numeric_limits<double>::infinity();
    int used = 0;
    for (const auto& ray : samples.rays) {
        for (int i = 0; i <= samples.count; ++i) {
            const double s =
                samples.s_lo + (samples.s_hi - samples.s_lo) * i / samples.count;
            const Vec p = ray(s);
            if (!metric_M.chart.contains(p)) continue;
            const double gval = pair.gamma(p);
            if (gval < pair.compact_cutoff) continue;
            ++used;
            Mat g = metric_M.eval(p);
            Vec grad = geo::gradient(metric_M, pair.gamma, p);
            const double gnorm = std::sqrt(grad.dot(g * grad));
            worst_grad = std::max(worst_grad, gnorm - pair.c * std::sqrt(gval));

            const double rhs =
                pair.c_prime * std::sqrt(gval * pair.h.h(std::sqrt(gval)));
            double lhs;
            if (pair.flavor == Flavor::Hessian) {
                Mat H = geo::hessian(metric_M, pair.gamma, p);
                lhs = max_relative_eigenvalue(g, H);
            } else {
                lhs = geo::laplacian(metric_M, pair.gamma, p);
            }
            worst_bound = std::max(worst_bound, lhs - rhs);
        }
    }
    if (used == 0) throw NoDivergentRays("no ray samples beyond the compact cutoff");
    rep.gradient.observed = worst_grad;
    rep.gradient.verdict = worst_grad <= 1e-6 ? Verdict::Pass : Verdict::Fail;
    rep.bound.observed = worst_bound;
    rep.bound.verdict = worst_bound <= 1e-6 ? Verdict::Pass : Verdict::Fail;
    return rep;
}

PropagationResult propagate_oy_pair(const Immersion& imm, const ScalarField& Gamma_fiber,
                                    const GrowthFunction& h, Flavor flavor,
                                    const PropagationOptions& opts) {
    if (!imm.warped) throw AmbientNotWarped("propagation needs a warped-product ambient");
    const auto& w = *imm.warped;
    PropagationResult out;

    // (h, Gamma) must be an OY-pair for the Hessian on the fiber; the
    // Hessian flavor is required even when propagating the Laplacian one.
    out.h_report = check_h_conditions(h);
    if (!out.h_report.all_pass())
        throw HypothesisFailed("h-conditions", "growth function fails (1)-(3)");
    OYPair fiber_pair;
    fiber_pair.h = h;
    fiber_pair.gamma = Gamma_fiber;
    fiber_pair.flavor = Flavor::Hessian;
    fiber_pair.c = opts.fiber_c;
    fiber_pair.c_prime = opts.fiber_c_prime;
    fiber_pair.compact_cutoff = opts.fiber_cutoff;
    out.fiber_gamma = check_gamma_conditions(fiber_pair, w.fiber, opts.V_samples);
    if (!out.fiber_gamma.all_pass())
        throw HypothesisFailed("fiber-pair", "(h, Gamma) is not an OY-pair on the fiber");

    if (!opts.properness_asserted)
        throw HypothesisFailed("properness", "scenario does not assert a proper immersion");
    out.hypothesis_notes.push_back("asserted: properness of the immersion");

    // (b): base projection inside the declared compact K, on samples
    Rng rng(opts.seed);
    QuasiRandom qr(imm.chart.dim, rng.child("samples"));
    std::vector<Vec> sample_points;
    for (int i = 0; i < opts.surface_samples; ++i) {
        Vec u = qr.next_in_box(imm.chart, 0.05);
        const Vec x = w.base_part(imm.at(u));
        if (!opts.base_compact_K.contains(x, -1e-9))
            throw HypothesisFailed("compact-K",
                                   "base projection leaves the declared compact subset");
        sample_points.push_back(u);
    }

    // constants of the compact set
    Objective psi_ratio = [&](const Vec& x) {
        Vec gr = w.grad_psi_over_psi(x);
        return std::sqrt(gr.dot(w.base.eval(x) * gr));
    };
    Objective psi_val = [&](const Vec& x) { return w.psi_at(x); };
    out.A0 = estimate_extremum(psi_ratio, opts.base_compact_K, ExtremumMode::Sup, 160,
                               rng.child("A0"))
                 .value;
    out.B0 = estimate_extremum(psi_val, opts.base_compact_K, ExtremumMode::Inf, 160,
                               rng.child("B0"))
                 .value;
    if (!(out.B0 > 0)) throw NonpositiveWarp("psi not positive on the compact subset");

    // gamma on M and hypothesis (c)/(c'): growth of the second fundamental
    // form against sqrt(h(sqrt gamma))
    ScalarField gamma_M;
    gamma_M.dim = imm.domain_dim;
    gamma_M.name = "gamma = Gamma o pi_V o phi";
    gamma_M.fd = FdConfig{1e-3, 4};
    {
        const Immersion* ip = &imm;
        const wp::WarpedProduct* wpp = imm.warped.get();
        ScalarField Gf = Gamma_fiber;
        gamma_M.f = [ip, wpp, Gf](const Vec& u) { return Gf(wpp->fiber_part(ip->at(u))); };
    }

    double alpha_obs = 0.0;
    for (size_t idx = 0; idx < sample_points.size(); ++idx) {
        const Vec& u = sample_points[idx];
        // sup over unit tangent directions of |S(e,e)|, small-budget search
        Mat frame = imm.tangent_frame(u);
        Mat G = imm.ambient.eval(imm.at(u));
        double s_sup = 0.0;
        Rng local = rng.child("snorm").child(static_cast<uint64_t>(idx));
        for (int k = 0; k < 16; ++k) {
            Vec c = local.unit_vec(imm.domain_dim);
            Vec e = frame * c;
            Vec s = second_fundamental_form(imm, u, e, e).components;
            s_sup = std::max(s_sup, std::sqrt(s.dot(G * s)));
        }
        double bound_scale;
        if (flavor == Flavor::Hessian) {
            bound_scale = s_sup;
        } else {
            Vec hvec = mean_curvature_vector(imm, u).components;
            bound_scale = std::sqrt(hvec.dot(G * hvec));
        }
        const double gval = gamma_M(u);
        alpha_obs = std::max(alpha_obs,
                             bound_scale / std::sqrt(std::max(h.h(std::sqrt(gval)), 1e-12)));
    }
    out.alpha_observed = alpha_obs;
    out.hypothesis_notes.push_back("finite-horizon: ||S|| growth ratio observed " +
                                   std::to_string(alpha_obs));

    // derived constant for the constructed pair (proof chain of the
    // propagation argument)
    const double c = fiber_pair.c, cp = fiber_pair.c_prime;
    out.c_double_prime = 2.0 * out.A0 * c + cp / (out.B0 * out.B0) + c / out.B0;

    out.pair_on_M.h = h;
    out.pair_on_M.gamma = gamma_M;
    out.pair_on_M.flavor = flavor;
    out.pair_on_M.c = c / out.B0 + 1e-6;
    out.pair_on_M.c_prime = out.c_double_prime + 1e-6;
    out.pair_on_M.compact_cutoff = std::max(1.0, fiber_pair.compact_cutoff);

    MetricField induced = imm.induced_metric_field();
    out.m_gamma = check_gamma_conditions(out.pair_on_M, induced, opts.M_samples);
    return out;
}

OYSequence weak_oy_sequence(const MetricField& metric_M, const ScalarField& f, Flavor flavor,
                            const std::vector<double>& n_list, const ChartDomain& region,
                            int budget, Rng rng) {
    Objective fx = [&](const Vec& p) { return f(p); };
    auto sup_est = estimate_extremum(fx, region, ExtremumMode::Sup, budget, rng.child("sup"),
                                     8, 400);

    OYSequence seq;
    seq.sup_estimate = sup_est.value;
    for (double n : n_list) {
        // the refined maximizer is the natural candidate for every n; accept
        // any sampled point that satisfies both inequalities independently
        Vec p = sup_est.witness;
        const double val = f(p);
        double bound;
        if (flavor == Flavor::Hessian) {
            Mat H = geo::hessian(metric_M, f, p);
            bound = max_relative_eigenvalue(metric_M.eval(p), H);
        } else {
            bound = geo::laplacian(metric_M, f, p);
        }
        const bool value_ok = val > sup_est.value - 1.0 / n;
        const bool bound_ok = bound <= 1.0 / n;
        if (!(value_ok && bound_ok))
            throw NotFound("no admissible point for n = " + std::to_string(n) +
                           " (value gap " + std::to_string(sup_est.value - val) + ", bound " +
                           std::to_string(bound) + ")");
        seq.points.push_back(p);
        seq.values.push_back(val);
        seq.bounds.push_back(bound);
        seq.n_values.push_back(n);
    }
    return seq;
}

ScalarGrowthReport scalar_growth_check(const MetricField& metric_M, const ScalarField& rho_M,
                                       int log_iterates, const std::vector<Vec>& points) {
    ScalarGrowthReport rep;
    rep.min_slack = std::numeric_limits<double>::infinity();
    for (const auto& p : points) {
        const double rho = rho_M(p);
        double prod = rho * rho;
        double it = rho;
        for (int j = 0; j < log_iterates; ++j) {
            it = std::log(it);
            if (!(it > 0))
                throw IterateDomainError("log iterate nonpositive at rho = " +
                                         std::to_string(rho));
            prod *= it * it;
        }
        const double s = geo::scalar_curvature(metric_M, p);
        const double slack = s + prod;  // s >= -prod
        if (slack < rep.min_slack) {
            rep.min_slack = slack;
            rep.worst_point = p;
        }
    }
    rep.holds = rep.min_slack >= 0.0;
    return rep;
}

}  // namespace warpgeo::oy
