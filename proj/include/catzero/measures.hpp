#pragma once

#include "catzero/errors.hpp"
#include "catzero/rng.hpp"
#include "catzero/spaces/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

namespace catzero {

/// Finitely supported probability measure on a geodesic space.
///
/// Atoms are canonicalized, duplicates merged (first occurrence keeps its
/// position) and weights renormalized to sum to one.
template <GeodesicSpace S>
class FiniteMeasure {
 public:
  using Space = S;
  using Point = typename S::Point;

  struct Atom {
    Point point;
    double weight;
  };

  /// Tolerated deviation of the input weight sum from one before renormalizing.
  static constexpr double kSumTolerance = 1e-6;

  static FiniteMeasure make(S space, std::vector<Atom> atoms) {
    if (atoms.empty()) throw ValidationError("a measure needs at least one atom");
    double sum = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const double w = atoms[i].weight;
      if (!(w > 0.0) || !std::isfinite(w)) {
        throw ValidationError("atom " + std::to_string(i) + " has nonpositive weight");
      }
      try {
        space.validate(atoms[i].point);
      } catch (const InvalidPointError& e) {
        throw ValidationError("atom " + std::to_string(i) + ": " + e.what());
      }
      atoms[i].point = space.canonical(atoms[i].point);
      sum += w;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
      throw ValidationError("weights sum to " + std::to_string(sum) + ", expected 1");
    }

    // Merge exact duplicates; keep first-occurrence order for reproducible draws.
    std::vector<std::size_t> order(atoms.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return atoms[a].point < atoms[b].point; });
    std::vector<std::size_t> owner(atoms.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
      const bool dup = k > 0 && atoms[order[k]].point == atoms[order[k - 1]].point;
      owner[order[k]] = dup ? owner[order[k - 1]] : order[k];
    }
    std::vector<Atom> merged;
    std::vector<std::size_t> slot(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (owner[i] == i) {
        slot[i] = merged.size();
        merged.push_back(atoms[i]);
      } else {
        merged[slot[owner[i]]].weight += atoms[i].weight;
      }
    }
    const double total = std::accumulate(merged.begin(), merged.end(), 0.0,
                                         [](double acc, const Atom& a) { return acc + a.weight; });
    for (auto& a : merged) a.weight /= total;
    return FiniteMeasure(std::move(space), std::move(merged));
  }

  /// Uniform empirical measure of a point cloud.
  static FiniteMeasure empirical(S space, std::span<const Point> points) {
    if (points.empty()) throw ValidationError("empirical measure of an empty sample");
    std::vector<Atom> atoms;
    atoms.reserve(points.size());
    const double w = 1.0 / static_cast<double>(points.size());
    for (const auto& p : points) atoms.push_back({p, w});
    return make(std::move(space), std::move(atoms));
  }

  static FiniteMeasure point_mass(S space, Point p) { return make(std::move(space), {{std::move(p), 1.0}}); }

  const S& space() const noexcept { return space_; }
  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  const Atom& atom(std::size_t i) const { return atoms_.at(i); }

  /// Index of the atom selected by a uniform variate u ∈ [0,1).
  std::size_t atom_index_for(double u) const {
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), atoms_.size() - 1);
  }

 private:
  FiniteMeasure(S space, std::vector<Atom> atoms) : space_(std::move(space)), atoms_(std::move(atoms)) {
    cumulative_.reserve(atoms_.size());
    double acc = 0.0;
    for (const auto& a : atoms_) cumulative_.push_back(acc += a.weight);
    cumulative_.back() = 1.0;
  }

  S space_;
  std::vector<Atom> atoms_;
  std::vector<double> cumulative_;
};

template <GeodesicSpace S>
FiniteMeasure<S> make_measure(S space, std::vector<typename FiniteMeasure<S>::Atom> atoms) {
  return FiniteMeasure<S>::make(std::move(space), std::move(atoms));
}

/// Largest pairwise distance between atoms; 0 for a point mass.
template <GeodesicSpace S>
double support_diameter(const FiniteMeasure<S>& nu) {
  const auto atoms = nu.atoms();
  double diameter = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      diameter = std::max(diameter, nu.space().distance(atoms[i].point, atoms[j].point));
    }
  }
  return diameter;
}

/// Σ wᵢ d(x, yᵢ)².
template <GeodesicSpace S>
double second_moment(const FiniteMeasure<S>& nu, const typename S::Point& x) {
  nu.space().validate(x);
  double total = 0.0;
  for (const auto& a : nu.atoms()) {
    const double d = nu.space().distance(x, a.point);
    total += a.weight * d * d;
  }
  return total;
}

/// Counter-indexed i.i.d. sampler: draw(k) depends only on (seed, k).
template <GeodesicSpace S>
class SampleStream {
 public:
  SampleStream(const FiniteMeasure<S>& measure, std::uint64_t seed, std::uint64_t counter = 0)
      : measure_(&measure), seed_(seed), counter_(counter) {}

  std::size_t draw_index(std::uint64_t k) const {
    return measure_->atom_index_for(counter_uniform(seed_, k));
  }
  const typename S::Point& draw(std::uint64_t k) const { return measure_->atom(draw_index(k)).point; }

  /// Draws at the current counter and advances it.
  const typename S::Point& next() { return draw(counter_++); }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }
  const FiniteMeasure<S>& measure() const noexcept { return *measure_; }

 private:
  const FiniteMeasure<S>* measure_;
  std::uint64_t seed_;
  std::uint64_t counter_;
};

}  // namespace catzero
