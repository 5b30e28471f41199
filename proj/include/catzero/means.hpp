#pragma once

#include "catzero/measures.hpp"
#include "catzero/spaces/euclidean.hpp"
#include "catzero/spaces/hyperboloid.hpp"
#include "catzero/spaces/metric_tree.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>

namespace catzero {

/// Running inductive mean: s₁ = y₁, sₖ = point at parameter 1/k on the
/// geodesic from sₖ₋₁ to yₖ. Order-sensitive outside flat spaces.
template <GeodesicSpace S>
class InductiveMean {
 public:
  using Point = typename S::Point;

  explicit InductiveMean(const S& space) : space_(&space) {}

  void push(const Point& y) {
    ++count_;
    if (count_ == 1) {
      space_->validate(y);
      value_ = space_->canonical(y);
    } else {
      value_ = space_->geodesic_point(*value_, y, 1.0 / static_cast<double>(count_));
    }
  }

  std::size_t count() const noexcept { return count_; }
  const Point& value() const {
    if (!value_) throw DomainError("inductive mean of an empty sequence");
    return *value_;
  }

 private:
  const S* space_;
  std::optional<Point> value_;
  std::size_t count_ = 0;
};

template <GeodesicSpace S>
typename S::Point inductive_mean(const S& space, std::span<const typename S::Point> points) {
  if (points.empty()) throw DomainError("inductive mean of an empty sequence");
  InductiveMean<S> mean(space);
  for (const auto& y : points) mean.push(y);
  return mean.value();
}

template <class P>
struct BarycenterResult {
  P point;
  double objective = 0.0;  // second moment at `point`
  std::size_t iterations = 0;
  bool converged = true;
};

struct KarcherOptions {
  double tolerance = 1e-12;  // on the Riemannian gradient norm ‖Σ wᵢ log_x(yᵢ)‖
  std::size_t max_iterations = 10000;
};

/// Exact: the objective restricted to one edge is a single convex quadratic,
/// minimized in closed form per edge; the best edge wins.
BarycenterResult<TreePoint> barycenter(const FiniteMeasure<MetricTree>& nu);

/// Weighted coordinate mean.
BarycenterResult<EuclideanPoint> barycenter(const FiniteMeasure<Euclidean>& nu);

/// Fixed-point iteration x ← exp_x(Σ wᵢ log_x(yᵢ)) started at the heaviest atom.
/// Throws ConvergenceError (carrying the best iterate) if the tolerance is not met.
BarycenterResult<HyperboloidPoint> barycenter(const FiniteMeasure<Hyperboloid>& nu,
                                              const KarcherOptions& options = {});

/// Σ wᵢ log_x(yᵢ); vanishes at the barycenter.
TangentVector karcher_gradient(const FiniteMeasure<Hyperboloid>& nu, const HyperboloidPoint& x);

/// Expectation of a space-valued random variable, given its law.
template <GeodesicSpace S>
auto expectation(const FiniteMeasure<S>& pushforward) {
  return barycenter(pushforward);
}

/// ∫{d(z,x)² − d(b,x)²} dν(x) − d(z,b)², b the barycenter. Nonnegative in CAT(0).
template <GeodesicSpace S>
double variance_slack(const FiniteMeasure<S>& nu, const typename S::Point& z) {
  const auto b = barycenter(nu);
  const double dzb = nu.space().distance(z, b.point);
  double integral = 0.0;
  for (const auto& a : nu.atoms()) {
    const double dz = nu.space().distance(z, a.point);
    const double db = nu.space().distance(b.point, a.point);
    integral += a.weight * (dz * dz - db * db);
  }
  return integral - dzb * dzb;
}

/// diam(Supp ν) − d(b(ν), Supp ν).
template <GeodesicSpace S>
double support_proximity_slack(const FiniteMeasure<S>& nu) {
  const auto b = barycenter(nu);
  double nearest = std::numeric_limits<double>::infinity();
  for (const auto& a : nu.atoms()) nearest = std::min(nearest, nu.space().distance(b.point, a.point));
  return support_diameter(nu) - nearest;
}

}  // namespace catzero
