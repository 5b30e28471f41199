#pragma once

#include "catzero/errors.hpp"
#include "catzero/spaces/coords.hpp"

#include <concepts>
#include <string_view>

namespace catzero {

/// Initial velocity of a unit-time geodesic, in ambient coordinates.
struct TangentVector {
  Coords base;
  Coords components;
};

/// A uniquely geodesic metric space with canonical point representation.
///
/// `distance` and `geodesic_point` follow the usual constant-speed convention:
/// geodesic_point(p, q, 0) == p, geodesic_point(p, q, 1) == q.
template <class S>
concept GeodesicSpace = requires(const S& s, const typename S::Point& p, double t) {
  typename S::Point;
  { s.distance(p, p) } -> std::convertible_to<double>;
  { s.geodesic_point(p, p, t) } -> std::same_as<typename S::Point>;
  { s.canonical(p) } -> std::same_as<typename S::Point>;
  s.validate(p);
  { S::kind } -> std::convertible_to<std::string_view>;
};

template <class S>
concept TangentSpaceModel = GeodesicSpace<S> && requires(const S& s, const typename S::Point& p,
                                                         const TangentVector& v) {
  { s.log_map(p, p) } -> std::same_as<TangentVector>;
  { s.exp_map(p, v) } -> std::same_as<typename S::Point>;
  { s.tangent_norm(v) } -> std::convertible_to<double>;
};

/// Runtime-dispatching log map: spaces without a tangent model (trees) throw.
template <GeodesicSpace S>
TangentVector log_map(const S& space, const typename S::Point& base,
                      const typename S::Point& target) {
  if constexpr (TangentSpaceModel<S>) {
    return space.log_map(base, target);
  } else {
    throw UnsupportedOperationError(std::string("log_map is not defined on ") +
                                    std::string(S::kind) + " spaces");
  }
}

template <GeodesicSpace S>
typename S::Point exp_map(const S& space, const typename S::Point& base, const TangentVector& v) {
  if constexpr (TangentSpaceModel<S>) {
    return space.exp_map(base, v);
  } else {
    throw UnsupportedOperationError(std::string("exp_map is not defined on ") +
                                    std::string(S::kind) + " spaces");
  }
}

inline void check_unit_interval(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("geodesic parameter must lie in [0, 1]");
}

/// ½d(x,y)² + ½d(x,z)² − ¼d(y,z)² − d(x,m)², m the midpoint of y and z.
/// Nonnegative exactly when the CAT(0) comparison holds for the triple.
template <GeodesicSpace S>
double cat0_midpoint_slack(const S& space, const typename S::Point& x,
                           const typename S::Point& y, const typename S::Point& z) {
  space.validate(x);
  space.validate(y);
  space.validate(z);
  const double dxy = space.distance(x, y);
  const double dxz = space.distance(x, z);
  const double dyz = space.distance(y, z);
  const double dxm = space.distance(x, space.geodesic_point(y, z, 0.5));
  return 0.5 * dxy * dxy + 0.5 * dxz * dxz - 0.25 * dyz * dyz - dxm * dxm;
}

/// (1−t)d(γ(0),η(0)) + t·d(γ(1),η(1)) − d(γ(t),η(t)) for γ = [p0,p1], η = [q0,q1].
template <GeodesicSpace S>
double geodesic_convexity_slack(const S& space, const typename S::Point& p0,
                                const typename S::Point& p1, const typename S::Point& q0,
                                const typename S::Point& q1, double t) {
  check_unit_interval(t);
  const double start = space.distance(p0, q0);
  const double end = space.distance(p1, q1);
  const double mid = space.distance(space.geodesic_point(p0, p1, t), space.geodesic_point(q0, q1, t));
  return (1.0 - t) * start + t * end - mid;
}

}  // namespace catzero
