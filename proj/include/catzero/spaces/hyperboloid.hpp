#pragma once

#include "catzero/spaces/space.hpp"

#include <compare>

namespace catzero {

/// Point of H^m in the hyperboloid model: x₀ > 0, ⟨x,x⟩_M = −1.
struct HyperboloidPoint {
  Coords coords;

  friend bool operator==(const HyperboloidPoint& a, const HyperboloidPoint& b) {
    return coords_equal(a.coords, b.coords);
  }
  friend std::strong_ordering operator<=>(const HyperboloidPoint& a, const HyperboloidPoint& b) {
    return compare_coords(a.coords, b.coords);
  }
};

/// Hyperbolic space of curvature −1 embedded in Minkowski space R^{1,m}.
class Hyperboloid {
 public:
  using Point = HyperboloidPoint;
  static constexpr std::string_view kind = "hyperboloid";
  static constexpr double kTolerance = 1e-9;

  explicit Hyperboloid(int dimension);

  int dimension() const noexcept { return dim_; }

  /// −x₀y₀ + Σ xᵢyᵢ.
  static double minkowski(const Coords& x, const Coords& y) {
    return -x[0] * y[0] + x.tail(x.size() - 1).dot(y.tail(y.size() - 1));
  }

  Point origin() const;
  /// Validating constructor; coordinates must already lie on the sheet.
  Point point(const Coords& coords) const;
  /// Lifts spatial coordinates (x₁..x_m) onto the upper sheet.
  Point lift(const Coords& spatial) const;
  /// exp at the origin of the tangent vector (0, v).
  Point from_origin_tangent(const Coords& v) const;

  void validate(const Point& p) const;
  Point canonical(const Point& p) const { return p; }

  double distance(const Point& p, const Point& q) const;
  Point geodesic_point(const Point& p, const Point& q, double t) const;

  TangentVector log_map(const Point& base, const Point& target) const;
  Point exp_map(const Point& base, const TangentVector& v) const;
  double tangent_norm(const TangentVector& v) const;

 private:
  Point exp_unchecked(const Coords& base, const Coords& v) const;
  TangentVector log_unchecked(const Coords& base, const Coords& target) const;

  int dim_;
};

}  // namespace catzero
