#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "warpgeo/rng.hpp"
#include "warpgeo/types.hpp"

namespace warpgeo {

using Objective = std::function<double(const Vec&)>;

struct LocalMinResult {
    Vec x;
    double value = std::numeric_limits<double>::infinity();
    int evaluations = 0;
};

// Nelder-Mead restricted to a box; candidate vertices are clamped back into
// the box, which lets extrema sit on the boundary (suprema of monotone fields
// routinely do). Objectives may throw; failures count as +inf.
LocalMinResult nelder_mead_box(const Objective& f, const Vec& x0, const ChartDomain& box,
                               double scale, int max_iter = 200, double tol = 1e-12);

// Unconstrained Nelder-Mead.
LocalMinResult nelder_mead(const Objective& f, const Vec& x0, double scale,
                           int max_iter = 200, double tol = 1e-12);

enum class ExtremumMode { Sup, Inf };

struct ExtremumEstimate {
    double value = 0.0;
    Vec witness;
    int samples = 0;
};

// Quasi-random sweep of a box plus local refinement of the best candidates.
// Sup is approached from below and inf from above, so the estimate errs on
// the side that makes an inequality verdict harder, never easier.
ExtremumEstimate estimate_extremum(const Objective& f, const ChartDomain& box,
                                   ExtremumMode mode, int budget, Rng rng,
                                   int refine_candidates = 6, int refine_iter = 120);

// Damped Gauss-Newton for small least-squares systems; returns final x and
// the squared residual norm.
struct GaussNewtonResult {
    Vec x;
    double residual2 = std::numeric_limits<double>::infinity();
    bool converged = false;
};
GaussNewtonResult gauss_newton(const std::function<Vec(const Vec&)>& residual,
                               const std::function<Mat(const Vec&)>& jacobian, Vec x0,
                               int max_iter = 60, double tol2 = 1e-26);

// Minimize a smooth objective over the unit sphere of an inner product G,
// by projected gradient descent with backtracking.
LocalMinResult sphere_minimize(const Objective& f, const std::function<Vec(const Vec&)>& grad,
                               const Mat& gram, Vec v0, int max_iter = 300);

}  // namespace warpgeo
