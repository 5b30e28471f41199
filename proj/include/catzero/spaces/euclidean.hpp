#pragma once

#include "catzero/spaces/space.hpp"

#include <compare>

namespace catzero {

struct EuclideanPoint {
  Coords coords;

  friend bool operator==(const EuclideanPoint& a, const EuclideanPoint& b) {
    return coords_equal(a.coords, b.coords);
  }
  friend std::strong_ordering operator<=>(const EuclideanPoint& a, const EuclideanPoint& b) {
    return compare_coords(a.coords, b.coords);
  }
};

/// R^m with the Euclidean norm; the finite-dimensional Hilbert model.
class Euclidean {
 public:
  using Point = EuclideanPoint;
  static constexpr std::string_view kind = "euclidean";

  explicit Euclidean(int dimension);

  int dimension() const noexcept { return dim_; }

  Point point(const Coords& coords) const;
  Point point(std::initializer_list<double> coords) const;
  Point zero() const { return {Coords::Zero(dim_)}; }

  void validate(const Point& p) const;
  Point canonical(const Point& p) const { return p; }

  double distance(const Point& p, const Point& q) const;
  Point geodesic_point(const Point& p, const Point& q, double t) const;

  TangentVector log_map(const Point& base, const Point& target) const;
  Point exp_map(const Point& base, const TangentVector& v) const;
  double tangent_norm(const TangentVector& v) const { return v.components.norm(); }

 private:
  int dim_;
};

}  // namespace catzero
