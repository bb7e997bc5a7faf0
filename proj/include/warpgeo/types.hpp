#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "warpgeo/errors.hpp"

namespace warpgeo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Chart coordinates of a point. All geometry in this library lives in a
// single coordinate chart per manifold.
using Point = Vec;

// Finite-difference configuration attached to anything we differentiate.
// Fields backed by exact formulas tolerate the small default step; fields
// that are themselves computed numerically (induced metrics, distance
// functions) carry a larger step so the evaluation noise does not dominate
// the difference quotient.
struct FdConfig {
    double step = 1e-4;
    int order = 2;  // 2 or 4
};

struct ChartDomain {
    int dim = 0;
    std::vector<std::pair<double, double>> bounds;  // open intervals per coordinate
    std::string description;

    static ChartDomain box(int dim, double lo, double hi, std::string desc = "") {
        ChartDomain c;
        c.dim = dim;
        c.bounds.assign(static_cast<size_t>(dim), {lo, hi});
        c.description = std::move(desc);
        c.validate();
        return c;
    }
    static ChartDomain of(std::vector<std::pair<double, double>> b, std::string desc = "") {
        ChartDomain c;
        c.dim = static_cast<int>(b.size());
        c.bounds = std::move(b);
        c.description = std::move(desc);
        c.validate();
        return c;
    }

    void validate() const {
        if (dim < 1) throw DimensionError("chart dimension must be >= 1");
        if (static_cast<int>(bounds.size()) != dim)
            throw DimensionError("chart bounds size does not match dim");
        for (const auto& [lo, hi] : bounds)
            if (!(lo < hi)) throw InvalidArgument("empty chart interval");
    }

    bool contains(const Vec& p, double margin = 0.0) const {
        if (p.size() != dim) return false;
        for (int i = 0; i < dim; ++i) {
            if (!(p[i] > bounds[i].first + margin && p[i] < bounds[i].second - margin))
                return false;
        }
        return true;
    }

    void require_inside(const Vec& p, const char* what = "point") const {
        if (!contains(p))
            throw OutOfChart(std::string(what) + " outside chart" +
                             (description.empty() ? "" : " (" + description + ")"));
    }

    Vec clamp(const Vec& p, double margin) const {
        Vec q = p;
        for (int i = 0; i < dim; ++i) {
            q[i] = std::min(std::max(q[i], bounds[i].first + margin), bounds[i].second - margin);
        }
        return q;
    }

    // Same box pulled inward by a fraction of each span; search regions use
    // this so refinement never lands on the literal chart boundary.
    ChartDomain shrunk(double frac) const {
        ChartDomain c = *this;
        for (auto& [lo, hi] : c.bounds) {
            const double m = frac * (hi - lo);
            lo += m;
            hi -= m;
        }
        return c;
    }

    Vec center() const {
        Vec c(dim);
        for (int i = 0; i < dim; ++i) c[i] = 0.5 * (bounds[i].first + bounds[i].second);
        return c;
    }

    // Cartesian product, left coordinates first.
    static ChartDomain product(const ChartDomain& a, const ChartDomain& b) {
        ChartDomain c;
        c.dim = a.dim + b.dim;
        c.bounds = a.bounds;
        c.bounds.insert(c.bounds.end(), b.bounds.begin(), b.bounds.end());
        c.description = a.description + " x " + b.description;
        return c;
    }
};

struct TangentVector {
    Point base;
    Vec components;
};

// Smallest eigenvalue a metric may have before we call it singular.
inline constexpr double kMetricEigenvalueTol = 1e-10;

// A smooth metric tensor over a chart. `g` must return a symmetric positive
// definite dim x dim matrix at every point of the chart; eval() enforces it.
struct MetricField {
    int dim = 0;
    std::function<Mat(const Vec&)> g;
    std::string name;
    ChartDomain chart;
    FdConfig fd{};
    // Optional closed-form geodesic distance; the shooting solver is the
    // fallback for metrics that do not carry one.
    std::function<double(const Vec&, const Vec&)> exact_distance;

    Mat eval(const Vec& p) const {
        chart.require_inside(p, "metric evaluation point");
        Mat m = g(p);
        if (m.rows() != dim || m.cols() != dim)
            throw DimensionError("metric '" + name + "' returned wrong-sized matrix");
        const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
        if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
            throw InvalidArgument("metric '" + name + "' is not symmetric");
        m = 0.5 * (m + m.transpose());
        Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() <= kMetricEigenvalueTol)
            throw SingularMetric("metric '" + name + "' not positive definite at sampled point");
        return m;
    }

    // Raw inverse with the same singularity guard.
    Mat inverse_at(const Vec& p) const { return eval(p).inverse(); }
};

// A scalar function over a chart-sized domain.
struct ScalarField {
    int dim = 0;
    std::function<double(const Vec&)> f;
    std::string name;
    FdConfig fd{};

    double operator()(const Vec& p) const {
        if (p.size() != dim) throw DimensionError("scalar field '" + name + "' arity mismatch");
        double v = f(p);
        if (!std::isfinite(v))
            throw NumericalError("scalar field '" + name + "' non-finite at sampled point");
        return v;
    }
};

// A vector field given by chart components.
struct VectorField {
    int dim = 0;
    std::function<Vec(const Vec&)> comps;
    std::string name;
    FdConfig fd{};

    Vec operator()(const Vec& p) const {
        Vec v = comps(p);
        if (v.size() != dim) throw DimensionError("vector field '" + name + "' arity mismatch");
        return v;
    }
};

}  // namespace warpgeo
