#pragma once

#include "catzero/spaces/space.hpp"

#include <span>
#include <vector>

namespace catzero {

template <class P>
struct ProductPoint {
  std::vector<P> factors;

  friend bool operator==(const ProductPoint&, const ProductPoint&) = default;
};

/// n-fold product of a base space with the ℓ¹ distance Σ dᵢ. Geodesics are
/// taken factorwise, which is one (not the only) geodesic for ℓ¹.
template <GeodesicSpace S>
class L1Product {
 public:
  using Point = ProductPoint<typename S::Point>;
  static constexpr std::string_view kind = "l1-product";

  L1Product(S base, std::size_t factors) : base_(std::move(base)), factors_(factors) {}

  const S& base() const noexcept { return base_; }
  std::size_t factors() const noexcept { return factors_; }

  void validate(const Point& p) const {
    if (p.factors.size() != factors_) throw InvalidPointError("product point has wrong arity");
    for (const auto& f : p.factors) base_.validate(f);
  }

  Point canonical(const Point& p) const {
    Point out;
    out.factors.reserve(p.factors.size());
    for (const auto& f : p.factors) out.factors.push_back(base_.canonical(f));
    return out;
  }

  double distance(const Point& p, const Point& q) const {
    validate(p);
    validate(q);
    double total = 0.0;
    for (std::size_t i = 0; i < factors_; ++i) total += base_.distance(p.factors[i], q.factors[i]);
    return total;
  }

  Point geodesic_point(const Point& p, const Point& q, double t) const {
    check_unit_interval(t);
    validate(p);
    validate(q);
    Point out;
    out.factors.reserve(factors_);
    for (std::size_t i = 0; i < factors_; ++i) {
      out.factors.push_back(base_.geodesic_point(p.factors[i], q.factors[i], t));
    }
    return out;
  }

 private:
  S base_;
  std::size_t factors_;
};

}  // namespace catzero
