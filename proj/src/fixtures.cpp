#include "catzero/fixtures.hpp"

#include <cmath>
#include <numbers>

namespace catzero::fixtures {

FiniteMeasure<MetricTree> tripod_leaf_measure() {
  const MetricTree tripod = MetricTree::tripod();
  const double third = 1.0 / 3.0;
  return make_measure(tripod, {{tripod.branch_point(1, 1.0), third},
                               {tripod.branch_point(2, 1.0), third},
                               {tripod.branch_point(3, 1.0), third}});
}

FiniteMeasure<Hyperboloid> hyperbolic_triangle_measure() {
  const Hyperboloid h2(2);
  const double weights[] = {0.5, 0.3, 0.2};
  std::vector<FiniteMeasure<Hyperboloid>::Atom> atoms;
  for (int k = 0; k < 3; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / 3.0;
    Coords v(2);
    v << 0.45 * std::cos(angle), 0.45 * std::sin(angle);
    atoms.push_back({h2.from_origin_tangent(v), weights[k]});
  }
  return make_measure(h2, std::move(atoms));
}

FiniteMeasure<Euclidean> two_point_line_measure() {
  const Euclidean line(1);
  return make_measure(line, {{line.point({0.0}), 0.5}, {line.point({1.0}), 0.5}});
}

}  // namespace catzero::fixtures
