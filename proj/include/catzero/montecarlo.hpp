#pragma once

#include "catzero/bounds.hpp"
#include "catzero/means.hpp"
#include "catzero/mm_invariants.hpp"
#include "catzero/spaces/product.hpp"
#include "catzero/spaces/random.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace catzero::mc {

struct Interval {
  double low = 0.0;
  double high = 0.0;

  bool contains(double x) const noexcept { return low <= x && x <= high; }
};

/// Exact binomial (Clopper–Pearson) interval for k successes in `trials`.
Interval clopper_pearson(std::uint64_t successes, std::uint64_t trials, double confidence);

/// Standard normal quantile.
double normal_quantile(double p);

/// Splits [0, count) into contiguous chunks, one per worker (0 = hardware
/// concurrency), and runs `body(begin, end)` on each.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t, std::size_t)>& body);

/// Compensated running sum.
class KahanSum {
 public:
  void add(double x) noexcept {
    const double y = x - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const noexcept { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

template <GeodesicSpace S>
struct ExperimentConfig {
  FiniteMeasure<S> measure;
  std::size_t n = 1;
  std::size_t trials = 1;
  std::vector<double> r_grid{0.0};
  std::uint64_t seed = 42;
  double confidence = 0.99;
  unsigned workers = 0;
};

void validate_common(std::size_t n, std::size_t trials, double confidence);
void validate_r_grid(const std::vector<double>& r_grid);

/// Which closed-form tail bound applies to a space, and with what dimension.
template <class S>
struct TailBound;

template <>
struct TailBound<MetricTree> {
  static constexpr const char* name = "rtree";
  static int dimension(const MetricTree&) { return 0; }
  static double value(const MetricTree&, std::size_t n, double r, double d) {
    return bounds::rtree_tail_bound({n, r, d, 1});
  }
};

template <>
struct TailBound<Hyperboloid> {
  static constexpr const char* name = "hadamard";
  static int dimension(const Hyperboloid& s) { return s.dimension(); }
  static double value(const Hyperboloid& s, std::size_t n, double r, double d) {
    return bounds::hadamard_tail_bound({n, r, d, s.dimension()}).value;
  }
};

/// R^m is itself an m-dimensional Hadamard manifold.
template <>
struct TailBound<Euclidean> {
  static constexpr const char* name = "hadamard";
  static int dimension(const Euclidean& s) { return s.dimension(); }
  static double value(const Euclidean& s, std::size_t n, double r, double d) {
    return bounds::hadamard_tail_bound({n, r, d, s.dimension()}).value;
  }
};

inline std::vector<double> point_coordinates(const TreePoint& p) {
  return {static_cast<double>(p.edge), p.offset};
}
inline std::vector<double> point_coordinates(const HyperboloidPoint& p) {
  return {p.coords.data(), p.coords.data() + p.coords.size()};
}
inline std::vector<double> point_coordinates(const EuclideanPoint& p) {
  return {p.coords.data(), p.coords.data() + p.coords.size()};
}

/// sₙ for every trial; trial t uses stream counters t·n .. t·n + n − 1.
template <GeodesicSpace S>
std::vector<typename S::Point> simulate_inductive_means(const FiniteMeasure<S>& measure, std::size_t n,
                                                        std::size_t trials, std::uint64_t seed,
                                                        unsigned workers) {
  validate_common(n, trials, 0.5);
  std::vector<typename S::Point> out(trials, measure.atom(0).point);
  const SampleStream<S> stream(measure, seed);
  parallel_for(trials, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      InductiveMean<S> mean(measure.space());
      const std::uint64_t base = static_cast<std::uint64_t>(t) * n;
      for (std::size_t i = 0; i < n; ++i) mean.push(stream.draw(base + i));
      out[t] = mean.value();
    }
  });
  return out;
}

template <GeodesicSpace S>
std::vector<double> distances_to(const S& space, const std::vector<typename S::Point>& cloud,
                                 const typename S::Point& center, unsigned workers) {
  std::vector<double> d(cloud.size());
  parallel_for(cloud.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) d[t] = space.distance(cloud[t], center);
  });
  return d;
}

struct TailRow {
  double r = 0.0;
  std::uint64_t exceed_count = 0;
  double empirical = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double theory_bound = 0.0;

  friend bool operator==(const TailRow&, const TailRow&) = default;
};

/// Estimated ℙ(d(sₙ, b(ν)) ≥ r) along an r grid, with exact binomial intervals
/// and the matching theoretical bound.
struct TailReport {
  std::vector<TailRow> rows;
  double diameter = 0.0;
  std::string space_kind;
  std::string bound_name;
  int manifold_dimension = 0;
  std::vector<double> barycenter;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double confidence = 0.99;

  /// r values where the bound falls below the lower confidence limit.
  std::vector<double> violations() const;
  bool dominated() const { return violations().empty(); }

  friend bool operator==(const TailReport&, const TailReport&) = default;
};

TailRow make_tail_row(double r, std::uint64_t exceed, std::uint64_t trials, double confidence, double bound);

template <GeodesicSpace S>
TailReport run_tail_experiment(const ExperimentConfig<S>& cfg) {
  validate_common(cfg.n, cfg.trials, cfg.confidence);
  validate_r_grid(cfg.r_grid);
  const auto b = expectation(cfg.measure);
  const double diameter = support_diameter(cfg.measure);
  const auto cloud = simulate_inductive_means(cfg.measure, cfg.n, cfg.trials, cfg.seed, cfg.workers);
  const auto d = distances_to(cfg.measure.space(), cloud, b.point, cfg.workers);

  TailReport report;
  report.diameter = diameter;
  report.space_kind = std::string(S::kind);
  report.bound_name = TailBound<S>::name;
  report.manifold_dimension = TailBound<S>::dimension(cfg.measure.space());
  report.barycenter = point_coordinates(b.point);
  report.n = cfg.n;
  report.trials = cfg.trials;
  report.seed = cfg.seed;
  report.confidence = cfg.confidence;
  for (double r : cfg.r_grid) {
    std::uint64_t exceed = 0;
    for (double x : d) exceed += x >= r ? 1 : 0;
    report.rows.push_back(make_tail_row(r, exceed, cfg.trials, cfg.confidence,
                                        TailBound<S>::value(cfg.measure.space(), cfg.n, r, diameter)));
  }
  return report;
}

struct SturmCheck {
  double lhs_estimate = 0.0;  // mean of d(sₙ, b)² over trials
  Interval lhs_ci;            // normal approximation
  double rhs_exact = 0.0;     // second moment at b, divided by n
  double sample_variance = 0.0;

  bool holds() const noexcept { return rhs_exact >= lhs_ci.low; }
};

template <GeodesicSpace S>
SturmCheck check_sturm_inequality(const ExperimentConfig<S>& cfg) {
  validate_common(cfg.n, cfg.trials, cfg.confidence);
  const auto b = expectation(cfg.measure);
  const auto cloud = simulate_inductive_means(cfg.measure, cfg.n, cfg.trials, cfg.seed, cfg.workers);
  const auto d = distances_to(cfg.measure.space(), cloud, b.point, cfg.workers);

  KahanSum sum;
  for (double x : d) sum.add(x * x);
  const double trials = static_cast<double>(cfg.trials);
  const double mean = sum.value() / trials;
  KahanSum dev;
  for (double x : d) dev.add((x * x - mean) * (x * x - mean));
  const double variance = cfg.trials > 1 ? dev.value() / (trials - 1.0) : 0.0;
  const double half = normal_quantile(0.5 + cfg.confidence / 2.0) * std::sqrt(variance / trials);

  SturmCheck out;
  out.lhs_estimate = mean;
  out.lhs_ci = {mean - half, mean + half};
  out.rhs_exact = b.objective / static_cast<double>(cfg.n);
  out.sample_variance = variance;
  return out;
}

struct LipschitzResult {
  double max_ratio = 0.0;
  std::size_t tested = 0;
  std::size_t skipped = 0;  // pairs with x = y
};

/// max d(sₙ(x), sₙ(y)) / d_ℓ¹(x, y) over random tuple pairs. Half the pairs are
/// independent, half differ from x in a random subset of coordinates.
template <GeodesicSpace S>
LipschitzResult lipschitz_ratio_test(const S& space, std::size_t n, std::size_t pairs, std::uint64_t seed,
                                     double scale = 1.0) {
  if (n < 1 || pairs < 1) throw DomainError("need n >= 1 and at least one pair");
  const L1Product<S> product(space, n);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  LipschitzResult out;
  for (std::size_t k = 0; k < pairs; ++k) {
    typename L1Product<S>::Point x;
    typename L1Product<S>::Point y;
    const bool local = coin(rng);
    for (std::size_t i = 0; i < n; ++i) {
      x.factors.push_back(random_point(space, rng, scale));
      y.factors.push_back(local && coin(rng) ? x.factors.back() : random_point(space, rng, scale));
    }
    const double l1 = product.distance(x, y);
    if (l1 == 0.0) {
      ++out.skipped;
      continue;
    }
    const double d = space.distance(inductive_mean<S>(space, x.factors), inductive_mean<S>(space, y.factors));
    out.max_ratio = std::max(out.max_ratio, d / l1);
    ++out.tested;
  }
  return out;
}

/// Distribution-free interval for the closed-ball (1−κ) quantile of a sample.
struct QuantileEstimate {
  double value = 0.0;
  Interval ci;
};

QuantileEstimate sample_quantile(std::vector<double> sample, double kappa, double confidence);

struct CradRow {
  double kappa = 0.0;
  bool computed = false;  // false when κ·trials < 50
  double empirical = 0.0;
  Interval ci;
  double bound = 0.0;

  bool within_bound() const noexcept { return !computed || ci.low <= bound; }
};

/// Central radius of the simulated sₙ law about the barycenter of the sₙ cloud.
template <GeodesicSpace S>
std::vector<CradRow> estimate_crad_of_mean(const ExperimentConfig<S>& cfg, const std::vector<double>& kappas) {
  validate_common(cfg.n, cfg.trials, cfg.confidence);
  const double diameter = support_diameter(cfg.measure);
  const auto cloud = simulate_inductive_means(cfg.measure, cfg.n, cfg.trials, cfg.seed, cfg.workers);
  const auto cloud_measure = FiniteMeasure<S>::empirical(cfg.measure.space(), cloud);
  const auto center = barycenter(cloud_measure).point;
  const auto d = distances_to(cfg.measure.space(), cloud, center, cfg.workers);

  std::vector<CradRow> rows;
  for (double kappa : kappas) {
    CradRow row;
    row.kappa = kappa;
    row.bound = bounds::crad_bound(cfg.n, kappa, diameter);
    if (kappa * static_cast<double>(cfg.trials) >= 50.0) {
      const auto q = sample_quantile(d, kappa, cfg.confidence);
      row.computed = true;
      row.empirical = q.value;
      row.ci = q.ci;
    }
    rows.push_back(row);
  }
  return rows;
}

struct DriftEstimate {
  double estimate = 0.0;  // d(barycenter of the sₙ cloud, b(ν))
  double slack = 0.0;     // z·√(mean squared spread of the cloud / trials)
  double bound = 0.0;     // 2D/√n

  bool within_bound() const noexcept { return estimate <= bound + slack; }
};

template <GeodesicSpace S>
DriftEstimate estimate_mean_drift(const ExperimentConfig<S>& cfg) {
  validate_common(cfg.n, cfg.trials, cfg.confidence);
  if (cfg.trials < 1000) throw DomainError("mean drift estimation needs at least 1000 trials");
  const auto b = expectation(cfg.measure);
  const auto cloud = simulate_inductive_means(cfg.measure, cfg.n, cfg.trials, cfg.seed, cfg.workers);
  const auto cloud_measure = FiniteMeasure<S>::empirical(cfg.measure.space(), cloud);
  const auto center = barycenter(cloud_measure);

  DriftEstimate out;
  out.estimate = cfg.measure.space().distance(center.point, b.point);
  out.slack = normal_quantile(0.5 + cfg.confidence / 2.0) *
              std::sqrt(center.objective / static_cast<double>(cfg.trials));
  out.bound = bounds::mean_drift_bound(cfg.n, support_diameter(cfg.measure));
  return out;
}

struct ProductConcentrationRow {
  double r = 0.0;
  std::uint64_t exceed_count = 0;
  double empirical = 0.0;
  Interval ci;
  double bound = 0.0;

  bool within_bound() const noexcept { return ci.low <= bound; }
};

/// Tail of |f − 𝔼f| for f(x) = Σxᵢ on the ℓ¹ product of uniform two-point
/// spaces {0, Dᵢ}, against 2e^{−r²/2ΣDᵢ²}.
std::vector<ProductConcentrationRow> check_product_concentration(const std::vector<double>& diameters,
                                                                 std::size_t trials,
                                                                 const std::vector<double>& r_grid,
                                                                 std::uint64_t seed, double confidence = 0.99,
                                                                 unsigned workers = 0);

}  // namespace catzero::mc
