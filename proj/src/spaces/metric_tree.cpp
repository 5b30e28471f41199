#include "catzero/spaces/metric_tree.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

namespace catzero {

MetricTree::MetricTree(std::vector<std::int64_t> vertices, std::vector<Edge> edges)
    : vertex_ids_(std::move(vertices)), edges_(std::move(edges)) {
  if (edges_.empty()) throw ValidationError("metric tree needs at least one edge");
  n_ = vertex_ids_.size();
  for (std::size_t i = 0; i < n_; ++i) {
    if (!index_of_.emplace(vertex_ids_[i], i).second) {
      throw ValidationError("duplicate vertex id " + std::to_string(vertex_ids_[i]));
    }
  }
  if (edges_.size() + 1 != n_) {
    throw ValidationError("a tree on " + std::to_string(n_) + " vertices has " +
                          std::to_string(n_ - 1) + " edges, got " + std::to_string(edges_.size()));
  }

  incident_.assign(n_, {});
  endpoints_.reserve(edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    const auto iu = index_of_.find(edge.u);
    const auto iv = index_of_.find(edge.v);
    if (iu == index_of_.end() || iv == index_of_.end()) {
      throw ValidationError("edge " + std::to_string(e) + " references an unknown vertex");
    }
    if (iu->second == iv->second) throw ValidationError("edge " + std::to_string(e) + " is a loop");
    if (!(edge.length > 0.0) || !std::isfinite(edge.length)) {
      throw ValidationError("edge " + std::to_string(e) + " must have positive finite length");
    }
    endpoints_.emplace_back(iu->second, iv->second);
    incident_[iu->second].push_back(e);
    incident_[iv->second].push_back(e);
  }

  // All-pairs path sums by BFS from every vertex; sums accumulate outward from
  // the source so a walk from the source reproduces them bit for bit.
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  vertex_dist_.assign(n_ * n_, -1.0);
  next_edge_.assign(n_ * n_, kNone);
  for (std::size_t src = 0; src < n_; ++src) {
    double* dist = &vertex_dist_[src * n_];
    std::size_t* first = &next_edge_[src * n_];
    dist[src] = 0.0;
    std::deque<std::size_t> queue{src};
    while (!queue.empty()) {
      const std::size_t w = queue.front();
      queue.pop_front();
      for (std::size_t e : incident_[w]) {
        const std::size_t other = endpoints_[e].first == w ? endpoints_[e].second : endpoints_[e].first;
        if (dist[other] >= 0.0) continue;
        dist[other] = dist[w] + edges_[e].length;
        first[other] = (w == src) ? e : first[w];
        queue.push_back(other);
      }
    }
    if (std::any_of(dist, dist + n_, [](double d) { return d < 0.0; })) {
      throw ValidationError("edges do not connect all vertices");
    }
  }

  vertex_canonical_.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t e = incident_[i].front();
    vertex_canonical_.push_back({e, endpoints_[e].first == i ? 0.0 : edges_[e].length});
  }
}

MetricTree MetricTree::tripod(double branch_length) {
  return MetricTree({0, 1, 2, 3}, {{0, 1, branch_length}, {0, 2, branch_length}, {0, 3, branch_length}});
}

MetricTree::Point MetricTree::branch_point(std::size_t branch, double offset) const {
  if (branch < 1 || branch > edges_.size()) throw InvalidPointError("unknown branch");
  return point(branch - 1, offset);
}

MetricTree::Point MetricTree::point(std::size_t edge, double offset) const {
  const Point p{edge, offset};
  validate(p);
  return canonical(p);
}

MetricTree::Point MetricTree::vertex_point(std::int64_t vertex_id) const {
  const auto it = index_of_.find(vertex_id);
  if (it == index_of_.end()) throw InvalidPointError("unknown vertex " + std::to_string(vertex_id));
  return vertex_canonical_[it->second];
}

void MetricTree::validate(const Point& p) const {
  if (p.edge >= edges_.size()) throw InvalidPointError("unknown edge " + std::to_string(p.edge));
  if (!(p.offset >= 0.0 && p.offset <= edges_[p.edge].length)) {
    throw InvalidPointError("offset outside edge " + std::to_string(p.edge));
  }
}

MetricTree::Point MetricTree::canonical(const Point& p) const {
  if (p.offset <= 0.0) return vertex_canonical_[endpoints_[p.edge].first];
  if (p.offset >= edges_[p.edge].length) return vertex_canonical_[endpoints_[p.edge].second];
  return p;
}

std::optional<std::size_t> MetricTree::find_edge(std::int64_t a, std::int64_t b) const {
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if ((edges_[e].u == a && edges_[e].v == b) || (edges_[e].u == b && edges_[e].v == a)) return e;
  }
  return std::nullopt;
}

std::optional<std::size_t> MetricTree::vertex_index(std::int64_t id) const {
  const auto it = index_of_.find(id);
  if (it == index_of_.end()) return std::nullopt;
  return it->second;
}

MetricTree::Route MetricTree::route(const Point& p, const Point& q) const {
  const auto [pu, pv] = endpoints_[p.edge];
  const auto [qu, qv] = endpoints_[q.edge];
  Route r{};
  // q's edge sits entirely on one side of p's edge.
  if (vertex_distance(pu, qu) < vertex_distance(pv, qu)) {
    r.exit = pu;
    r.exit_leg = p.offset;
  } else {
    r.exit = pv;
    r.exit_leg = edges_[p.edge].length - p.offset;
  }
  if (vertex_distance(r.exit, qu) < vertex_distance(r.exit, qv)) {
    r.entry = qu;
    r.entry_leg = q.offset;
  } else {
    r.entry = qv;
    r.entry_leg = edges_[q.edge].length - q.offset;
  }
  return r;
}

double MetricTree::distance(const Point& p, const Point& q) const {
  validate(p);
  validate(q);
  if (p.edge == q.edge) return std::abs(p.offset - q.offset);
  // Always sum from the smaller endpoint so d(p, q) == d(q, p) bit for bit.
  if (q < p) return distance(q, p);
  const Route r = route(p, q);
  double total = r.exit_leg;
  for (std::size_t w = r.exit; w != r.entry;) {
    const std::size_t e = next_edge_[w * n_ + r.entry];
    total += edges_[e].length;
    w = endpoints_[e].first == w ? endpoints_[e].second : endpoints_[e].first;
  }
  return total + r.entry_leg;
}

MetricTree::Point MetricTree::on_edge_from(std::size_t e, std::size_t from_vertex, double s) const {
  const double length = edges_[e].length;
  s = std::clamp(s, 0.0, length);
  return canonical({e, endpoints_[e].first == from_vertex ? s : length - s});
}

MetricTree::Point MetricTree::geodesic_point(const Point& p, const Point& q, double t) const {
  check_unit_interval(t);
  validate(p);
  validate(q);
  if (t == 0.0) return canonical(p);
  if (t == 1.0) return canonical(q);
  if (p.edge == q.edge) {
    return canonical({p.edge, std::clamp(p.offset + t * (q.offset - p.offset), 0.0,
                                         edges_[p.edge].length)});
  }

  double s = t * distance(p, q);
  const Route r = route(p, q);
  if (s <= r.exit_leg) {
    const double offset = r.exit == endpoints_[p.edge].first ? p.offset - s : p.offset + s;
    return canonical({p.edge, std::clamp(offset, 0.0, edges_[p.edge].length)});
  }
  s -= r.exit_leg;
  for (std::size_t w = r.exit; w != r.entry;) {
    const std::size_t e = next_edge_[w * n_ + r.entry];
    if (s <= edges_[e].length) return on_edge_from(e, w, s);
    s -= edges_[e].length;
    w = endpoints_[e].first == w ? endpoints_[e].second : endpoints_[e].first;
  }
  return on_edge_from(q.edge, r.entry, std::min(s, r.entry_leg));
}

}  // namespace catzero
