#include "catzero/spaces/hyperboloid.hpp"

#include <cmath>
#include <string>

namespace catzero {

namespace {

Coords reproject(Coords x) {
  const auto spatial = x.tail(x.size() - 1);
  x[0] = std::sqrt(1.0 + spatial.squaredNorm());
  return x;
}

}  // namespace

Hyperboloid::Hyperboloid(int dimension) : dim_(dimension) {
  if (dimension < 1 || dimension + 1 > kMaxAmbientDim) {
    throw ValidationError("hyperboloid dimension must be in [1, " +
                          std::to_string(kMaxAmbientDim - 1) + "]");
  }
}

Hyperboloid::Point Hyperboloid::origin() const {
  Coords x = Coords::Zero(dim_ + 1);
  x[0] = 1.0;
  return {x};
}

Hyperboloid::Point Hyperboloid::point(const Coords& coords) const {
  Point p{coords};
  validate(p);
  return p;
}

Hyperboloid::Point Hyperboloid::lift(const Coords& spatial) const {
  if (spatial.size() != dim_) throw InvalidPointError("spatial coordinates have wrong dimension");
  Coords x(dim_ + 1);
  x[0] = 0.0;
  x.tail(dim_) = spatial;
  Point p{reproject(x)};
  validate(p);
  return p;
}

Hyperboloid::Point Hyperboloid::from_origin_tangent(const Coords& v) const {
  if (v.size() != dim_) throw InvalidPointError("tangent coordinates have wrong dimension");
  const double norm = v.norm();
  if (norm == 0.0) return origin();
  return lift(v * (std::sinh(norm) / norm));
}

void Hyperboloid::validate(const Point& p) const {
  const Coords& x = p.coords;
  if (x.size() != dim_ + 1) throw InvalidPointError("hyperboloid point has wrong dimension");
  if (!x.allFinite()) throw InvalidPointError("hyperboloid point has non-finite coordinates");
  if (!(x[0] > 0.0)) throw InvalidPointError("hyperboloid point must have x0 > 0");
  const double residual = minkowski(x, x) + 1.0;
  if (std::abs(residual) > kTolerance * std::max(1.0, x[0] * x[0])) {
    throw InvalidPointError("hyperboloid point is off the sheet <x,x> = -1");
  }
}

double Hyperboloid::distance(const Point& p, const Point& q) const {
  validate(p);
  validate(q);
  // arccosh(−⟨p,q⟩) rewritten through the Minkowski chord ⟨q−p,q−p⟩ = 4 sinh²(d/2),
  // which stays accurate for nearby points; negative roundoff is clamped.
  const Coords w = q.coords - p.coords;
  const double chord2 = std::max(0.0, minkowski(w, w));
  return 2.0 * std::asinh(0.5 * std::sqrt(chord2));
}

TangentVector Hyperboloid::log_unchecked(const Coords& base, const Coords& target) const {
  const Coords w = target - base;
  const double chord2 = std::max(0.0, minkowski(w, w));
  const double d = 2.0 * std::asinh(0.5 * std::sqrt(chord2));
  // Tangent projection target + ⟨base,target⟩·base, with ⟨base,target⟩ = −1 − chord²/2.
  Coords u = w - (0.5 * chord2) * base;
  const double norm = std::sqrt(std::max(0.0, minkowski(u, u)));
  if (d == 0.0 || norm == 0.0) return {base, Coords::Zero(base.size())};
  return {base, (d / norm) * u};
}

static Coords exp_coords(const Coords& base, const Coords& v, double norm) {
  if (norm == 0.0) return base;
  return reproject(std::cosh(norm) * base + (std::sinh(norm) / norm) * v);
}

Hyperboloid::Point Hyperboloid::exp_unchecked(const Coords& base, const Coords& v) const {
  const double norm = std::sqrt(std::max(0.0, minkowski(v, v)));
  return {exp_coords(base, v, norm)};
}

TangentVector Hyperboloid::log_map(const Point& base, const Point& target) const {
  validate(base);
  validate(target);
  return log_unchecked(base.coords, target.coords);
}

Hyperboloid::Point Hyperboloid::exp_map(const Point& base, const TangentVector& v) const {
  validate(base);
  if (v.base.size() != base.coords.size() || v.components.size() != base.coords.size()) {
    throw DomainError("tangent vector dimension does not match base point");
  }
  const double scale = std::max(1.0, base.coords.cwiseAbs().maxCoeff());
  if ((v.base - base.coords).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DomainError("tangent vector is based at a different point");
  }
  const double normal = minkowski(base.coords, v.components);
  if (std::abs(normal) > kTolerance * scale * std::max(1.0, v.components.norm())) {
    throw DomainError("vector is not tangent to the hyperboloid at its base");
  }
  return exp_unchecked(base.coords, v.components);
}

double Hyperboloid::tangent_norm(const TangentVector& v) const {
  return std::sqrt(std::max(0.0, minkowski(v.components, v.components)));
}

Hyperboloid::Point Hyperboloid::geodesic_point(const Point& p, const Point& q, double t) const {
  check_unit_interval(t);
  validate(p);
  validate(q);
  if (t == 0.0) return p;
  if (t == 1.0) return q;
  const TangentVector v = log_unchecked(p.coords, q.coords);
  return exp_unchecked(p.coords, t * v.components);
}

}  // namespace catzero
