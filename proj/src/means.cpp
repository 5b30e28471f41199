#include "catzero/means.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace catzero {

BarycenterResult<TreePoint> barycenter(const FiniteMeasure<MetricTree>& nu) {
  const MetricTree& tree = nu.space();
  std::optional<TreePoint> best;
  double best_objective = std::numeric_limits<double>::infinity();

  for (std::size_t e = 0; e < tree.edge_count(); ++e) {
    const double length = tree.edge_length(e);
    const TreePoint u = tree.vertex_point_at(tree.edge_u(e));
    const TreePoint v = tree.vertex_point_at(tree.edge_v(e));
    // Along the edge, d(s, y) = |s − c(y)| with c(y) = offset for atoms on the
    // edge, −d(u,y) beyond u and L + d(v,y) beyond v; the objective is
    // Σ w (s − c)², minimized at the clamped weighted mean of c.
    double centroid = 0.0;
    for (const auto& a : nu.atoms()) {
      double c = 0.0;
      if (a.point.edge == e) {
        c = a.point.offset;
      } else {
        const double du = tree.distance(u, a.point);
        const double dv = tree.distance(v, a.point);
        c = du < dv ? -du : length + dv;
      }
      centroid += a.weight * c;
    }
    const TreePoint candidate = tree.canonical({e, std::clamp(centroid, 0.0, length)});
    const double objective = second_moment(nu, candidate);
    if (objective < best_objective) {
      best_objective = objective;
      best = candidate;
    }
  }
  return {*best, best_objective, tree.edge_count(), true};
}

BarycenterResult<EuclideanPoint> barycenter(const FiniteMeasure<Euclidean>& nu) {
  Coords mean = Coords::Zero(nu.space().dimension());
  for (const auto& a : nu.atoms()) mean += a.weight * a.point.coords;
  EuclideanPoint p{mean};
  return {p, second_moment(nu, p), 1, true};
}

TangentVector karcher_gradient(const FiniteMeasure<Hyperboloid>& nu, const HyperboloidPoint& x) {
  const Hyperboloid& space = nu.space();
  TangentVector g{x.coords, Coords::Zero(x.coords.size())};
  for (const auto& a : nu.atoms()) g.components += a.weight * space.log_map(x, a.point).components;
  return g;
}

BarycenterResult<HyperboloidPoint> barycenter(const FiniteMeasure<Hyperboloid>& nu,
                                              const KarcherOptions& options) {
  const Hyperboloid& space = nu.space();
  const auto atoms = nu.atoms();
  std::size_t heaviest = 0;
  for (std::size_t i = 1; i < atoms.size(); ++i) {
    if (atoms[i].weight > atoms[heaviest].weight) heaviest = i;
  }

  HyperboloidPoint x = atoms[heaviest].point;
  HyperboloidPoint best = x;
  double best_norm = std::numeric_limits<double>::infinity();
  for (std::size_t it = 0; it <= options.max_iterations; ++it) {
    TangentVector g = karcher_gradient(nu, x);
    const double norm = space.tangent_norm(g);
    if (norm < best_norm) {
      best_norm = norm;
      best = x;
    }
    if (norm <= options.tolerance) return {x, second_moment(nu, x), it, true};
    if (it == options.max_iterations) break;
    // Step 1/λ with λ = Σ w·d·coth d, an upper bound on the Hessian of the
    // half objective; the full Euclidean-style step overshoots for spread atoms.
    double curvature = 0.0;
    for (const auto& a : atoms) {
      const double d = space.distance(x, a.point);
      curvature += a.weight * (d < 1e-8 ? 1.0 : d / std::tanh(d));
    }
    g.components /= curvature;
    x = space.exp_map(x, g);
  }
  throw ConvergenceError("hyperboloid barycenter did not reach gradient norm " +
                             std::to_string(options.tolerance) + " (best " +
                             std::to_string(best_norm) + ")",
                         std::vector<double>(best.coords.data(), best.coords.data() + best.coords.size()),
                         best_norm);
}

}  // namespace catzero
