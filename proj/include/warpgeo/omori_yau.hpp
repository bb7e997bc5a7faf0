#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "warpgeo/immersion.hpp"
#include "warpgeo/rng.hpp"
#include "warpgeo/types.hpp"

namespace warpgeo::oy {

enum class Flavor { Hessian, Laplacian };

enum class Verdict { Pass, Fail, Inconclusive };

struct ConditionReport {
    std::string item;
    Verdict verdict = Verdict::Inconclusive;
    double observed = 0.0;
    bool finite_horizon = false;  // asymptotic statement checked on a window
    bool certified = false;       // upgraded by an analytic certificate
    std::string note;
};

// Growth function h on [0, inf) together with optional analytic certificates
// for its two asymptotic conditions.
struct GrowthFunction {
    std::function<double(double)> h;
    std::string name;
    std::optional<double> certified_ratio_limsup;  // limsup t h(sqrt t)/h(t)
    std::optional<bool> certified_integral_diverges;
};

struct HReport {
    ConditionReport monotone;  // h(0) > 0 and h' >= 0
    ConditionReport ratio;     // limsup t h(sqrt t)/h(t) finite
    ConditionReport integral;  // int dt/sqrt(h) divergent
    bool all_pass() const {
        return monotone.verdict == Verdict::Pass && ratio.verdict == Verdict::Pass &&
               integral.verdict == Verdict::Pass;
    }
};

HReport check_h_conditions(const GrowthFunction& h, double t_max = 1e12, int grid = 240);

// How the exhaustion of M is sampled: either the manifold is compact (the
// annulus conditions hold vacuously) or the scenario declares divergent rays.
struct ExhaustionSamples {
    bool compact_manifold = false;
    std::vector<std::function<Vec(double)>> rays;  // s in [s_lo, s_hi]
    double s_lo = 1.0, s_hi = 40.0;
    int count = 48;
};

struct OYPair {
    GrowthFunction h;
    ScalarField gamma;  // on M
    Flavor flavor = Flavor::Hessian;
    double c = 1.0;        // gradient constant
    double c_prime = 1.0;  // hessian/laplacian constant
    double compact_cutoff = 1.0;  // gamma threshold for "outside a compact set"
};

struct GammaReport {
    ConditionReport proper;
    ConditionReport gradient;  // |grad gamma| <= c sqrt(gamma)
    ConditionReport bound;     // Hess or Laplacian bound with c'
    bool all_pass() const {
        return proper.verdict == Verdict::Pass && gradient.verdict == Verdict::Pass &&
               bound.verdict == Verdict::Pass;
    }
};

GammaReport check_gamma_conditions(const OYPair& pair, const MetricField& metric_M,
                                   const ExhaustionSamples& samples);

struct PropagationOptions {
    bool properness_asserted = false;
    ChartDomain base_compact_K;    // compact subset of the base holding pi_X(phi(M))
    ExhaustionSamples M_samples;   // exhaustion sampling on M
    ExhaustionSamples V_samples;   // exhaustion sampling on the fiber
    int surface_samples = 24;      // points of M for pointwise checks
    uint64_t seed = 11;
    double fiber_c = 2.0;          // constants of the declared fiber pair
    double fiber_c_prime = 2.0;
    double fiber_cutoff = 1.0;
};

struct PropagationResult {
    HReport h_report;
    GammaReport fiber_gamma;   // (h, Gamma) on the fiber
    GammaReport m_gamma;       // conditions for the constructed gamma on M
    OYPair pair_on_M;
    double A0 = 0.0;           // max over K of |grad psi / psi|
    double B0 = 0.0;           // min over K of psi
    double alpha_observed = 0.0;  // max of ||S|| / sqrt(h(sqrt gamma)) over samples
    double c_double_prime = 0.0;
    std::vector<std::string> hypothesis_notes;
};

// Pushes an OY-pair of the fiber through a cylindrically bounded immersion:
// verifies the hypotheses (properness asserted, base projection inside K,
// second-fundamental-form growth), computes the constants of the compact set
// and re-checks the constructed gamma = Gamma o pi_V o phi on M.
PropagationResult propagate_oy_pair(const Immersion& imm, const ScalarField& Gamma_fiber,
                                    const GrowthFunction& h, Flavor flavor,
                                    const PropagationOptions& opts);

struct OYSequence {
    std::vector<Vec> points;
    std::vector<double> values;
    std::vector<double> bounds;  // max Hessian eigenvalue or Laplacian at each point
    std::vector<double> n_values;
    double sup_estimate = 0.0;
};

// Extracts a weak maximum-principle sequence for f by multi-start
// maximization plus independent pointwise re-verification of the defining
// inequalities; throws NotFound when some n cannot be satisfied.
OYSequence weak_oy_sequence(const MetricField& metric_M, const ScalarField& f, Flavor flavor,
                            const std::vector<double>& n_list, const ChartDomain& region,
                            int budget, Rng rng);

struct ScalarGrowthReport {
    bool holds = false;
    double min_slack = 0.0;  // min over samples of s_M - rhs
    Vec worst_point;
};

// Pointwise check of the iterated-log scalar-curvature floor
// s_M >= -rho^2 (log rho)^2 ... (log^(k) rho)^2 at the given points.
ScalarGrowthReport scalar_growth_check(const MetricField& metric_M, const ScalarField& rho_M,
                                       int log_iterates, const std::vector<Vec>& points);

}  // namespace warpgeo::oy
