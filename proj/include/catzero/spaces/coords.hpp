#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <compare>

namespace catzero {

/// Largest ambient dimension supported by the manifold models. Fixed capacity
/// keeps coordinate vectors off the heap in the Monte Carlo inner loops.
inline constexpr int kMaxAmbientDim = 17;

using Coords = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxAmbientDim, 1>;

/// Lexicographic three-way comparison, shorter vectors first.
inline std::strong_ordering compare_coords(const Coords& a, const Coords& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return std::strong_ordering::less;
    if (b[i] < a[i]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

inline bool coords_equal(const Coords& a, const Coords& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

}  // namespace catzero
