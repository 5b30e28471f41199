#pragma once

#include "catzero/means.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace catzero::mm {

/// Subset-enumeration cap for general finite mm-spaces.
inline constexpr std::size_t kMaxEnumeration = 15;
/// Cap for real pushforwards, which are handled by sorted-interval search.
inline constexpr std::size_t kMaxPushforward = 20;
/// Mass comparisons accept a deficit up to this much.
inline constexpr double kMassTolerance = 1e-12;

/// Finite metric-measure space: distance matrix plus probability weights.
class FiniteMMSpace {
 public:
  static FiniteMMSpace make(Eigen::MatrixXd distances, std::vector<double> weights);

  /// Metric space of atom positions with the measure's weights.
  template <GeodesicSpace S>
  static FiniteMMSpace from_measure(const FiniteMeasure<S>& nu) {
    const auto atoms = nu.atoms();
    Eigen::MatrixXd d(atoms.size(), atoms.size());
    std::vector<double> w;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      w.push_back(atoms[i].weight);
      for (std::size_t j = 0; j < atoms.size(); ++j) d(i, j) = nu.space().distance(atoms[i].point, atoms[j].point);
    }
    return make(std::move(d), std::move(w));
  }

  std::size_t size() const noexcept { return weights_.size(); }
  double distance(std::size_t i, std::size_t j) const { return dist_(i, j); }
  double weight(std::size_t i) const { return weights_[i]; }
  const Eigen::MatrixXd& distances() const noexcept { return dist_; }
  std::span<const double> weights() const noexcept { return weights_; }
  double diameter() const { return dist_.maxCoeff(); }

  /// Same points and weights, distances multiplied by `alpha` > 0.
  FiniteMMSpace scaled(double alpha) const;

 private:
  FiniteMMSpace(Eigen::MatrixXd d, std::vector<double> w) : dist_(std::move(d)), weights_(std::move(w)) {}

  Eigen::MatrixXd dist_;
  std::vector<double> weights_;
};

/// ℓ¹ product of finite mm-spaces with the product measure.
FiniteMMSpace l1_product(std::span<const FiniteMMSpace> factors);

/// Image measure on the real line, sorted by value, equal values merged.
class PushforwardMeasure {
 public:
  static PushforwardMeasure make(std::vector<std::pair<double, double>> values);

  std::span<const std::pair<double, double>> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  /// ∫ t dμ(t), the barycenter of a measure on R.
  double mean() const;

 private:
  explicit PushforwardMeasure(std::vector<std::pair<double, double>> v) : values_(std::move(v)) {}
  std::vector<std::pair<double, double>> values_;
};

/// f_*(μ_X) for f given by its values on the points of X.
PushforwardMeasure pushforward(const FiniteMMSpace& x, std::span<const double> f);

/// Finite metric space of the values of f with |·| and the pushforward weights.
FiniteMMSpace image_space(const PushforwardMeasure& mu);

/// inf{diam Y₀ : μ(Y₀) ≥ mass}; 0 when mass ≤ 0.
double partial_diameter(const FiniteMMSpace& x, double mass);
double partial_diameter(const PushforwardMeasure& mu, double mass);

struct Separation {
  double value = 0.0;
  /// False when some κᵢ exceeds the total mass; `value` is then 0 by convention.
  bool attainable = true;
  std::uint32_t first = 0;   // optimal A₁ as a bitmask
  std::uint32_t second = 0;  // optimal A₂ as a bitmask
};

/// sup{d(A₁,A₂) : μ(A₁) ≥ κ₁, μ(A₂) ≥ κ₂}.
Separation separation_distance(const FiniteMMSpace& x, double kappa1, double kappa2);

/// Smallest closed-ball radius ρ around `center` value with mass ≥ 1 − κ,
/// given each atom's distance to the center.
double closed_ball_quantile(std::span<const double> distances, std::span<const double> weights, double kappa);

/// CRad about the mean of a real pushforward.
double central_radius(const PushforwardMeasure& mu, double kappa);

/// CRad(ν, 1−κ) about the barycenter of ν, closed balls.
template <GeodesicSpace S>
double central_radius(const FiniteMeasure<S>& nu, double kappa) {
  if (!(kappa > 0.0 && kappa <= 1.0)) throw DomainError("kappa must lie in (0, 1]");
  const auto b = barycenter(nu);
  std::vector<double> d;
  std::vector<double> w;
  for (const auto& a : nu.atoms()) {
    d.push_back(nu.space().distance(b.point, a.point));
    w.push_back(a.weight);
  }
  return closed_ball_quantile(d, w, kappa);
}

/// α_X(r) = sup{μ(X ∖ A₊ᵣ) : μ(A) ≥ ½}, A₊ᵣ the open r-neighbourhood.
double concentration_function(const FiniteMMSpace& x, double r);

struct WitnessBound {
  double bound = 0.0;
  std::vector<double> witness;  // values of the best 1-Lipschitz f on the points of X
};

/// Lower bound for ObsDiam_R(X; −κ′): the best diam(f_*μ, 1 − κ′) over the
/// witnesses d(A₁,·) (A₁ optimal for Sep(X; κ, κ)) and d(x₀,·), x₀ ∈ X.
WitnessBound obsdiam_witness_lower_bound(const FiniteMMSpace& x, double kappa, double kappa_prime);

/// d(A,·) on the points of X for a nonempty bitmask A.
std::vector<double> distance_to_set(const FiniteMMSpace& x, std::uint32_t set);

/// max over pairs of |f(i) − f(j)| − d(i,j); ≤ 0 iff f is 1-Lipschitz.
double lipschitz_excess(const FiniteMMSpace& x, std::span<const double> f);

}  // namespace catzero::mm
