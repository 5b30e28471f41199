#pragma once

#include "catzero/spaces/space.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace catzero {

/// A point of a metric tree: an edge index and the distance from that edge's
/// first endpoint. Points sitting on a vertex are stored in canonical form
/// (smallest incident edge, offset 0 or the full length), so `==` is point
/// equality for canonical points.
struct TreePoint {
  std::size_t edge = 0;
  double offset = 0.0;

  friend bool operator==(const TreePoint&, const TreePoint&) = default;
  friend auto operator<=>(const TreePoint&, const TreePoint&) = default;
};

/// Finite R-tree: a connected acyclic graph with positive edge lengths, viewed
/// as a geodesic metric space.
class MetricTree {
 public:
  using Point = TreePoint;
  static constexpr std::string_view kind = "tree";

  struct Edge {
    std::int64_t u;
    std::int64_t v;
    double length;
  };

  MetricTree(std::vector<std::int64_t> vertices, std::vector<Edge> edges);

  /// Three branches of equal length glued at vertex 0; branch i (1..3) is
  /// edge i−1, running from the origin to leaf vertex i.
  static MetricTree tripod(double branch_length = 1.0);

  /// Point on `branch` (1-based) of a tree built by `tripod`.
  Point branch_point(std::size_t branch, double offset) const;

  /// Validating, canonicalizing constructor for points.
  Point point(std::size_t edge, double offset) const;
  Point vertex_point(std::int64_t vertex_id) const;
  Point vertex_point_at(std::size_t vertex_index) const { return vertex_canonical_[vertex_index]; }

  void validate(const Point& p) const;
  Point canonical(const Point& p) const;

  double distance(const Point& p, const Point& q) const;
  Point geodesic_point(const Point& p, const Point& q, double t) const;

  std::size_t vertex_count() const noexcept { return vertex_ids_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::int64_t vertex_id(std::size_t index) const { return vertex_ids_.at(index); }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  std::size_t edge_u(std::size_t e) const { return endpoints_[e].first; }
  std::size_t edge_v(std::size_t e) const { return endpoints_[e].second; }
  double edge_length(std::size_t e) const { return edges_[e].length; }

  /// Index of the edge joining two vertex ids, in either orientation.
  std::optional<std::size_t> find_edge(std::int64_t a, std::int64_t b) const;
  std::optional<std::size_t> vertex_index(std::int64_t id) const;
  double vertex_distance(std::size_t a, std::size_t b) const { return vertex_dist_[a * n_ + b]; }

  /// Edges incident to a vertex, ascending.
  const std::vector<std::size_t>& incident_edges(std::size_t vertex_index) const {
    return incident_[vertex_index];
  }

 private:
  struct Route {
    std::size_t exit;   // vertex index leaving p's edge
    std::size_t entry;  // vertex index entering q's edge
    double exit_leg;    // p -> exit along p's edge
    double entry_leg;   // entry -> q along q's edge
  };

  Route route(const Point& p, const Point& q) const;
  Point on_edge_from(std::size_t e, std::size_t from_vertex, double s) const;

  std::vector<std::int64_t> vertex_ids_;
  std::vector<Edge> edges_;
  std::unordered_map<std::int64_t, std::size_t> index_of_;
  std::vector<std::pair<std::size_t, std::size_t>> endpoints_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<Point> vertex_canonical_;
  std::size_t n_ = 0;
  std::vector<double> vertex_dist_;       // n × n, path sums accumulated from the row vertex
  std::vector<std::size_t> next_edge_;    // n × n, first edge on the path row → column
};

}  // namespace catzero
