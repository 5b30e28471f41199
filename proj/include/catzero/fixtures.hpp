#pragma once

#include "catzero/measures.hpp"
#include "catzero/spaces/euclidean.hpp"
#include "catzero/spaces/hyperboloid.hpp"
#include "catzero/spaces/metric_tree.hpp"

namespace catzero::fixtures {

/// Uniform measure on the three leaves of the unit tripod (D = 2, barycenter
/// at the origin).
FiniteMeasure<MetricTree> tripod_leaf_measure();

/// Three atoms on H² at tangent radius 0.45 from the origin, directions 120°
/// apart, weights (0.5, 0.3, 0.2). Support diameter ≈ 0.79.
FiniteMeasure<Hyperboloid> hyperbolic_triangle_measure();

/// Uniform measure on {0, 1} ⊂ R.
FiniteMeasure<Euclidean> two_point_line_measure();

}  // namespace catzero::fixtures
