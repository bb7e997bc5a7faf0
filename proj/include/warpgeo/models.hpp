#pragma once

#include "warpgeo/types.hpp"

namespace warpgeo::models {

// Closed-form model metrics used as oracles and as scenario building blocks.
// Each carries an exact distance function where one exists.

// Flat R^n on a box chart.
MetricField euclidean(int dim, double half_width = 10.0);

// Round sphere of radius `a`, polar chart (theta, phi); dim 2.
MetricField sphere2(double a);

// Round 3-sphere of radius `a`, chart (chi, theta, phi).
MetricField sphere3(double a);

// Hyperbolic plane of curvature `b` < 0 as a scaled upper half-plane (x, y).
MetricField half_plane(double b = -1.0);

// Constant-curvature surface of curvature b (sphere / plane / half-plane).
MetricField space_form2(double b);

// Poincare half-plane with curvature -1 (alias used by the tests).
inline MetricField poincare_half_plane() { return half_plane(-1.0); }

// Circle of radius 1, chart phi in (-pi, pi).
MetricField circle();

// Natural interior base point for the charts above.
Vec default_center(const MetricField& m);

}  // namespace warpgeo::models
