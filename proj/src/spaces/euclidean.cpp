#include "catzero/spaces/euclidean.hpp"

#include <string>

namespace catzero {

Euclidean::Euclidean(int dimension) : dim_(dimension) {
  if (dimension < 1 || dimension > kMaxAmbientDim) {
    throw ValidationError("euclidean dimension must be in [1, " + std::to_string(kMaxAmbientDim) + "]");
  }
}

Euclidean::Point Euclidean::point(const Coords& coords) const {
  Point p{coords};
  validate(p);
  return p;
}

Euclidean::Point Euclidean::point(std::initializer_list<double> coords) const {
  Coords c(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double x : coords) c[i++] = x;
  return point(c);
}

void Euclidean::validate(const Point& p) const {
  if (p.coords.size() != dim_) throw InvalidPointError("euclidean point has wrong dimension");
  if (!p.coords.allFinite()) throw InvalidPointError("euclidean point has non-finite coordinates");
}

double Euclidean::distance(const Point& p, const Point& q) const {
  validate(p);
  validate(q);
  return (p.coords - q.coords).norm();
}

Euclidean::Point Euclidean::geodesic_point(const Point& p, const Point& q, double t) const {
  check_unit_interval(t);
  validate(p);
  validate(q);
  if (t == 0.0) return p;
  if (t == 1.0) return q;
  return {p.coords + t * (q.coords - p.coords)};
}

TangentVector Euclidean::log_map(const Point& base, const Point& target) const {
  validate(base);
  validate(target);
  return {base.coords, target.coords - base.coords};
}

Euclidean::Point Euclidean::exp_map(const Point& base, const TangentVector& v) const {
  validate(base);
  if (v.base.size() != dim_ || v.components.size() != dim_ || !coords_equal(v.base, base.coords)) {
    throw DomainError("tangent vector is based at a different point");
  }
  return {base.coords + v.components};
}

}  // namespace catzero
