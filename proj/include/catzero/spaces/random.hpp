#pragma once

#include "catzero/spaces/euclidean.hpp"
#include "catzero/spaces/hyperboloid.hpp"
#include "catzero/spaces/metric_tree.hpp"

#include <random>

namespace catzero {

/// Random test points. `scale` bounds the spread: tree points are uniform by
/// length, manifold points are Gaussian (in tangent coordinates at the origin
/// for the hyperboloid) with standard deviation `scale`.
inline TreePoint random_point(const MetricTree& tree, std::mt19937_64& rng, double /*scale*/ = 1.0) {
  double total = 0.0;
  for (std::size_t e = 0; e < tree.edge_count(); ++e) total += tree.edge_length(e);
  double s = std::uniform_real_distribution<double>(0.0, total)(rng);
  // Land on vertices now and then; they are the interesting cases.
  const bool snap = std::uniform_int_distribution<int>(0, 7)(rng) == 0;
  for (std::size_t e = 0; e < tree.edge_count(); ++e) {
    const double length = tree.edge_length(e);
    if (s <= length || e + 1 == tree.edge_count()) {
      const double offset = std::min(s, length);
      return tree.point(e, snap ? (offset < 0.5 * length ? 0.0 : length) : offset);
    }
    s -= length;
  }
  return tree.vertex_point_at(0);
}

/// Random tree on `vertices` vertices (ids 0..vertices−1): each new vertex
/// hangs off a uniformly chosen earlier one; lengths uniform in [0.2, 2].
inline MetricTree random_tree(std::mt19937_64& rng, std::size_t vertices) {
  std::vector<std::int64_t> ids;
  std::vector<MetricTree::Edge> edges;
  std::uniform_real_distribution<double> length(0.2, 2.0);
  for (std::size_t v = 0; v < vertices; ++v) {
    ids.push_back(static_cast<std::int64_t>(v));
    if (v == 0) continue;
    const auto parent = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
    edges.push_back({static_cast<std::int64_t>(parent), static_cast<std::int64_t>(v), length(rng)});
  }
  return MetricTree(std::move(ids), std::move(edges));
}

inline EuclideanPoint random_point(const Euclidean& space, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Coords c(space.dimension());
  for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = normal(rng);
  return space.point(c);
}

inline HyperboloidPoint random_point(const Hyperboloid& space, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Coords v(space.dimension());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = normal(rng);
  return space.from_origin_tangent(v);
}

}  // namespace catzero
