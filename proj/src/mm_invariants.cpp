#include "catzero/mm_invariants.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace catzero::mm {

namespace {

constexpr double kMetricTolerance = 1e-12;

void require_enumerable(std::size_t n) {
  if (n > kMaxEnumeration) {
    throw SizeError("subset enumeration is capped at " + std::to_string(kMaxEnumeration) +
                    " points, got " + std::to_string(n));
  }
}

// Mass of every subset, indexed by bitmask.
std::vector<double> subset_masses(std::span<const double> weights) {
  const std::size_t n = weights.size();
  std::vector<double> mass(std::size_t{1} << n, 0.0);
  for (std::uint32_t mask = 1; mask < mass.size(); ++mask) {
    const int low = std::countr_zero(mask);
    mass[mask] = mass[mask & (mask - 1)] + weights[static_cast<std::size_t>(low)];
  }
  return mass;
}

}  // namespace

FiniteMMSpace FiniteMMSpace::make(Eigen::MatrixXd d, std::vector<double> w) {
  const auto n = static_cast<Eigen::Index>(w.size());
  if (n == 0) throw ValidationError("mm-space needs at least one point");
  if (d.rows() != n || d.cols() != n) throw ValidationError("distance matrix does not match weight count");
  if (!d.allFinite()) throw ValidationError("distance matrix has non-finite entries");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) throw ValidationError("distance matrix needs a zero diagonal");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (d(i, j) < 0.0) throw ValidationError("negative distance");
      if (std::abs(d(i, j) - d(j, i)) > kMetricTolerance) throw ValidationError("distance matrix is not symmetric");
      if (i != j && d(i, j) == 0.0) throw ValidationError("distinct points at distance 0");
      for (Eigen::Index k = 0; k < n; ++k) {
        if (d(i, k) > d(i, j) + d(j, k) + kMetricTolerance) {
          throw ValidationError("triangle inequality fails at (" + std::to_string(i) + ", " +
                                std::to_string(j) + ", " + std::to_string(k) + ")");
        }
      }
    }
  }
  double sum = 0.0;
  for (double x : w) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw ValidationError("weights must be nonnegative");
    sum += x;
  }
  if (std::abs(sum - 1.0) > kMetricTolerance) throw ValidationError("weights must sum to 1");
  return FiniteMMSpace(std::move(d), std::move(w));
}

FiniteMMSpace FiniteMMSpace::scaled(double alpha) const {
  if (!(alpha > 0.0)) throw DomainError("scale factor must be positive");
  return FiniteMMSpace(alpha * dist_, weights_);
}

FiniteMMSpace l1_product(std::span<const FiniteMMSpace> factors) {
  if (factors.empty()) throw DomainError("product of no factors");
  std::size_t total = 1;
  for (const auto& f : factors) total *= f.size();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
  std::vector<double> w(total, 1.0);

  auto digits = [&](std::size_t index) {
    std::vector<std::size_t> out(factors.size());
    for (std::size_t k = factors.size(); k-- > 0;) {
      out[k] = index % factors[k].size();
      index /= factors[k].size();
    }
    return out;
  };
  for (std::size_t i = 0; i < total; ++i) {
    const auto di = digits(i);
    for (std::size_t k = 0; k < factors.size(); ++k) w[i] *= factors[k].weight(di[k]);
    for (std::size_t j = 0; j < total; ++j) {
      const auto dj = digits(j);
      double sum = 0.0;
      for (std::size_t k = 0; k < factors.size(); ++k) sum += factors[k].distance(di[k], dj[k]);
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sum;
    }
  }
  const double mass = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= mass;
  return FiniteMMSpace::make(std::move(d), std::move(w));
}

PushforwardMeasure PushforwardMeasure::make(std::vector<std::pair<double, double>> values) {
  if (values.empty()) throw ValidationError("pushforward needs at least one value");
  double sum = 0.0;
  for (const auto& [v, w] : values) {
    if (!std::isfinite(v)) throw ValidationError("pushforward value is not finite");
    if (!(w >= 0.0)) throw ValidationError("pushforward weight is negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kMetricTolerance) throw ValidationError("pushforward weights must sum to 1");
  std::sort(values.begin(), values.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& vw : values) {
    if (!merged.empty() && merged.back().first == vw.first) {
      merged.back().second += vw.second;
    } else {
      merged.push_back(vw);
    }
  }
  return PushforwardMeasure(std::move(merged));
}

double PushforwardMeasure::mean() const {
  double m = 0.0;
  for (const auto& [v, w] : values_) m += w * v;
  return m;
}

PushforwardMeasure pushforward(const FiniteMMSpace& x, std::span<const double> f) {
  if (f.size() != x.size()) throw DomainError("function values do not match the space");
  std::vector<std::pair<double, double>> values;
  for (std::size_t i = 0; i < f.size(); ++i) values.emplace_back(f[i], x.weight(i));
  return PushforwardMeasure::make(std::move(values));
}

FiniteMMSpace image_space(const PushforwardMeasure& mu) {
  const auto v = mu.values();
  Eigen::MatrixXd d(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
  std::vector<double> w;
  for (std::size_t i = 0; i < v.size(); ++i) {
    w.push_back(v[i].second);
    for (std::size_t j = 0; j < v.size(); ++j) {
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = std::abs(v[i].first - v[j].first);
    }
  }
  return FiniteMMSpace::make(std::move(d), std::move(w));
}

double partial_diameter(const FiniteMMSpace& x, double mass) {
  if (mass <= 0.0) return 0.0;
  if (mass > 1.0 + kMassTolerance) throw DomainError("mass must lie in [0, 1]");
  const std::size_t n = x.size();
  require_enumerable(n);
  const auto masses = subset_masses(x.weights());
  std::vector<double> diam(masses.size(), 0.0);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask < masses.size(); ++mask) {
    const int high = 31 - std::countl_zero(mask);
    const std::uint32_t rest = mask & ~(std::uint32_t{1} << high);
    double d = diam[rest];
    for (std::uint32_t r = rest; r != 0; r &= r - 1) {
      d = std::max(d, x.distance(static_cast<std::size_t>(high), static_cast<std::size_t>(std::countr_zero(r))));
    }
    diam[mask] = d;
    if (masses[mask] >= mass - kMassTolerance) best = std::min(best, d);
  }
  return best;
}

double partial_diameter(const PushforwardMeasure& mu, double mass) {
  if (mass <= 0.0) return 0.0;
  if (mass > 1.0 + kMassTolerance) throw DomainError("mass must lie in [0, 1]");
  const auto v = mu.values();
  if (v.size() > kMaxPushforward) {
    throw SizeError("pushforward search is capped at " + std::to_string(kMaxPushforward) + " values");
  }
  // Optimal sets on the line are intervals of consecutive values.
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    double acc = 0.0;
    for (std::size_t j = i; j < v.size(); ++j) {
      acc += v[j].second;
      if (acc >= mass - kMassTolerance) {
        best = std::min(best, v[j].first - v[i].first);
        break;
      }
    }
  }
  return best;
}

Separation separation_distance(const FiniteMMSpace& x, double kappa1, double kappa2) {
  if (!(kappa1 > 0.0) || !(kappa2 > 0.0)) throw DomainError("separation masses must be positive");
  const std::size_t n = x.size();
  require_enumerable(n);
  if (kappa1 > 1.0 + kMassTolerance || kappa2 > 1.0 + kMassTolerance) return {0.0, false, 0, 0};

  const auto masses = subset_masses(x.weights());
  Separation best{0.0, true, static_cast<std::uint32_t>(masses.size() - 1),
                  static_cast<std::uint32_t>(masses.size() - 1)};
  std::vector<double> to_first(n);
  std::vector<std::size_t> order(n);
  for (std::uint32_t first = 1; first < masses.size(); ++first) {
    if (masses[first] < kappa1 - kMassTolerance) continue;
    to_first = distance_to_set(x, first);
    // Given A₁, the best A₂ is a superlevel set of d(A₁,·): take the farthest
    // points until the mass requirement is met.
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return to_first[a] > to_first[b]; });
    double acc = 0.0;
    std::uint32_t second = 0;
    for (std::size_t k = 0; k < n; ++k) {
      acc += x.weight(order[k]);
      second |= std::uint32_t{1} << order[k];
      if (acc >= kappa2 - kMassTolerance) {
        if (to_first[order[k]] > best.value) best = {to_first[order[k]], true, first, second};
        break;
      }
    }
  }
  return best;
}

std::vector<double> distance_to_set(const FiniteMMSpace& x, std::uint32_t set) {
  if (set == 0) throw DomainError("distance to the empty set");
  std::vector<double> out(x.size(), std::numeric_limits<double>::infinity());
  for (std::uint32_t r = set; r != 0; r &= r - 1) {
    const auto a = static_cast<std::size_t>(std::countr_zero(r));
    if (a >= x.size()) throw DomainError("set mask references a missing point");
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::min(out[i], x.distance(a, i));
  }
  return out;
}

double closed_ball_quantile(std::span<const double> distances, std::span<const double> weights, double kappa) {
  if (!(kappa > 0.0 && kappa <= 1.0)) throw DomainError("kappa must lie in (0, 1]");
  if (distances.size() != weights.size() || distances.empty()) throw DomainError("distances and weights mismatch");
  const double target = 1.0 - kappa;
  if (target <= kMassTolerance) return 0.0;
  std::vector<std::size_t> order(distances.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return distances[a] < distances[b]; });
  double acc = 0.0;
  for (std::size_t i : order) {
    acc += weights[i];
    if (acc >= target - kMassTolerance) return distances[i];
  }
  return distances[order.back()];
}

double central_radius(const PushforwardMeasure& mu, double kappa) {
  const double center = mu.mean();
  std::vector<double> d;
  std::vector<double> w;
  for (const auto& [v, weight] : mu.values()) {
    d.push_back(std::abs(v - center));
    w.push_back(weight);
  }
  return closed_ball_quantile(d, w, kappa);
}

double concentration_function(const FiniteMMSpace& x, double r) {
  if (!(r > 0.0)) throw DomainError("r must be positive");
  const std::size_t n = x.size();
  require_enumerable(n);
  const auto masses = subset_masses(x.weights());
  const std::uint32_t full = static_cast<std::uint32_t>(masses.size() - 1);

  std::vector<std::uint32_t> near(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (x.distance(i, j) < r) near[i] |= std::uint32_t{1} << j;
    }
  }
  std::vector<std::uint32_t> neighbourhood(masses.size(), 0);
  double best = 0.0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    neighbourhood[mask] = neighbourhood[mask & (mask - 1)] | near[static_cast<std::size_t>(std::countr_zero(mask))];
    if (masses[mask] < 0.5 - kMassTolerance) continue;
    best = std::max(best, masses[full & ~neighbourhood[mask]]);
  }
  return best;
}

WitnessBound obsdiam_witness_lower_bound(const FiniteMMSpace& x, double kappa, double kappa_prime) {
  if (!(kappa_prime > 0.0 && kappa > kappa_prime)) throw DomainError("need kappa > kappa' > 0");
  require_enumerable(x.size());
  std::vector<std::vector<double>> witnesses;
  const Separation sep = separation_distance(x, kappa, kappa);
  if (sep.attainable) witnesses.push_back(distance_to_set(x, sep.first));
  for (std::size_t i = 0; i < x.size(); ++i) witnesses.push_back(distance_to_set(x, std::uint32_t{1} << i));

  WitnessBound best{-1.0, {}};
  for (auto& f : witnesses) {
    const double value = partial_diameter(pushforward(x, f), 1.0 - kappa_prime);
    if (value > best.bound) best = {value, std::move(f)};
  }
  return best;
}

double lipschitz_excess(const FiniteMMSpace& x, std::span<const double> f) {
  if (f.size() != x.size()) throw DomainError("function values do not match the space");
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < f.size(); ++j) worst = std::max(worst, std::abs(f[i] - f[j]) - x.distance(i, j));
  }
  return worst;
}

}  // namespace catzero::mm
