#include "catzero/cli/cli.hpp"

#include "catzero/bounds.hpp"
#include "catzero/fixtures.hpp"
#include "catzero/means.hpp"
#include "catzero/mm_invariants.hpp"
#include "catzero/montecarlo.hpp"
#include "catzero/spaces/random.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace catzero::cli {

namespace {

constexpr double kSlack = 1e-9;
constexpr double kExact = 1e-12;
constexpr std::size_t kMaxReportedFailures = 5;

std::string describe(const char* what, double value) {
  std::ostringstream s;
  s.precision(17);
  s << what << " = " << value;
  return s.str();
}

template <GeodesicSpace S>
FiniteMeasure<S> random_measure(const S& space, std::mt19937_64& rng, std::size_t max_atoms, double scale) {
  const auto atoms = std::uniform_int_distribution<std::size_t>(1, max_atoms)(rng);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  std::vector<typename FiniteMeasure<S>::Atom> out;
  double total = 0.0;
  for (std::size_t i = 0; i < atoms; ++i) {
    out.push_back({random_point(space, rng, scale), weight(rng)});
    total += out.back().weight;
  }
  for (auto& a : out) a.weight /= total;
  return make_measure(space, std::move(out));
}

mm::FiniteMMSpace random_mm_space(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> coord(0.0, 1.0);
  std::vector<std::array<double, 2>> pts(n);
  for (auto& p : pts) p = {coord(rng), coord(rng)};
  Eigen::MatrixXd d(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]);
    }
  }
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  if (std::bernoulli_distribution(0.5)(rng)) {
    std::uniform_real_distribution<double> u(0.1, 1.0);
    double total = 0.0;
    for (double& x : w) total += (x = u(rng));
    for (double& x : w) x /= total;
  }
  return mm::FiniteMMSpace::make(std::move(d), std::move(w));
}

void cat0_suite(SuiteResult& result, const VerifyOptions& options) {
  std::mt19937_64 rng(options.seed);
  const MetricTree tree = random_tree(rng, 8);
  const Hyperboloid h2(2);
  const Euclidean r3(3);
  for (std::size_t k = 0; k < options.count; ++k) {
    double slack = 0.0;
    switch (k % 3) {
      case 0:
        slack = cat0_midpoint_slack(tree, random_point(tree, rng), random_point(tree, rng), random_point(tree, rng));
        break;
      case 1:
        slack = cat0_midpoint_slack(h2, random_point(h2, rng), random_point(h2, rng), random_point(h2, rng));
        break;
      default:
        slack = cat0_midpoint_slack(r3, random_point(r3, rng), random_point(r3, rng), random_point(r3, rng));
    }
    result.record(slack >= -kSlack, describe("midpoint slack", slack));
  }
}

void convexity_suite(SuiteResult& result, const VerifyOptions& options) {
  std::mt19937_64 rng(options.seed + 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const MetricTree tree = random_tree(rng, 8);
  const Hyperboloid h2(2);
  const Euclidean r3(3);
  auto check = [&](const auto& space) {
    const auto p0 = random_point(space, rng);
    const auto p1 = random_point(space, rng);
    const auto q0 = random_point(space, rng);
    const auto q1 = random_point(space, rng);
    return geodesic_convexity_slack(space, p0, p1, q0, q1, unit(rng));
  };
  for (std::size_t k = 0; k < options.count; ++k) {
    const double slack = k % 3 == 0 ? check(tree) : k % 3 == 1 ? check(h2) : check(r3);
    result.record(slack >= -kSlack, describe("convexity slack", slack));
  }
}

void lipschitz_suite(SuiteResult& result, const VerifyOptions& options) {
  const MetricTree tree = MetricTree::tripod(2.0);
  const Hyperboloid h2(2);
  const Euclidean r3(3);
  for (std::size_t n = 1; n <= 16; ++n) {
    const double limit = 1.0 / static_cast<double>(n) + kSlack;
    const auto seed = options.seed + n;
    const double ratios[] = {mc::lipschitz_ratio_test(tree, n, 100, seed).max_ratio,
                             mc::lipschitz_ratio_test(h2, n, 100, seed).max_ratio,
                             mc::lipschitz_ratio_test(r3, n, 100, seed).max_ratio};
    for (double ratio : ratios) result.record(ratio <= limit, describe("lipschitz ratio", ratio));
  }
}

void variance_suite(SuiteResult& result, const VerifyOptions& options) {
  std::mt19937_64 rng(options.seed + 2);
  const MetricTree tree = random_tree(rng, 8);
  const Hyperboloid h2(2);
  const Euclidean r3(3);
  auto check = [&](const auto& space) {
    const auto nu = random_measure(space, rng, 8, 1.0);
    const auto z = random_point(space, rng);
    const double variance = variance_slack(nu, z);
    const double proximity = support_proximity_slack(nu);
    result.record(variance >= -kSlack, describe("variance slack", variance));
    result.record(proximity >= -kSlack, describe("support proximity slack", proximity));
  };
  for (int k = 0; k < 1000; ++k) {
    check(tree);
    check(h2);
    check(r3);
  }
}

void sturm_suite(SuiteResult& result, const VerifyOptions& options) {
  const auto tripod = fixtures::tripod_leaf_measure();
  const auto triangle = fixtures::hyperbolic_triangle_measure();
  const auto line = fixtures::two_point_line_measure();
  for (std::size_t n : {1, 2, 5, 10, 50}) {
    const auto a = mc::check_sturm_inequality<MetricTree>({tripod, n, 10000, {0.0}, options.seed, 0.99, options.workers});
    result.record(a.holds(), describe("tripod sturm rhs - lhs_low", a.rhs_exact - a.lhs_ci.low));
    const auto b = mc::check_sturm_inequality<Hyperboloid>({triangle, n, 10000, {0.0}, options.seed, 0.99, options.workers});
    result.record(b.holds(), describe("H2 sturm rhs - lhs_low", b.rhs_exact - b.lhs_ci.low));
    const auto c = mc::check_sturm_inequality<Euclidean>({line, n, 10000, {0.0}, options.seed, 0.99, options.workers});
    result.record(c.holds(), describe("line sturm rhs - lhs_low", c.rhs_exact - c.lhs_ci.low));
    result.record(c.lhs_ci.contains(0.25 / static_cast<double>(n)), describe("line sturm lhs", c.lhs_estimate));
  }
}

void check_mm_space(SuiteResult& result, const mm::FiniteMMSpace& x) {
  const double grid[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

  // Sep vanishes once both masses exceed one half.
  for (double k1 : {0.5, 0.7, 0.9}) {
    for (double k2 : {0.55, 0.75, 1.0}) {
      result.record(mm::separation_distance(x, k1, k2).value == 0.0, "Sep with kappa1 >= 1/2, kappa2 > 1/2");
    }
  }

  for (double kappa : {0.1, 0.2, 0.3, 0.4}) {
    const auto witness = mm::obsdiam_witness_lower_bound(x, kappa, kappa / 2.0);
    const double sep = mm::separation_distance(x, kappa, kappa).value;
    result.record(witness.bound >= sep - kExact, describe("witness bound - Sep", witness.bound - sep));
    result.record(mm::lipschitz_excess(x, witness.witness) <= kExact, "witness is 1-Lipschitz");
  }

  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto f = mm::distance_to_set(x, std::uint32_t{1} << i);
    const auto image = mm::pushforward(x, f);
    for (double kappa : grid) {
      const double diam = mm::partial_diameter(image, 1.0 - kappa);
      const double crad = mm::central_radius(image, kappa);
      result.record(diam <= 2.0 * crad + kExact, describe("partial diameter - 2 CRad", diam - 2.0 * crad));
    }
  }

  for (double alpha : {0.5, 2.0}) {
    const auto scaled = x.scaled(alpha);
    const auto line = mm::image_space(mm::pushforward(x, [&] {
      auto f = mm::distance_to_set(x, 1U);
      for (double& v : f) v *= alpha;
      return f;
    }()));
    for (double k1 : grid) {
      for (double k2 : grid) {
        const double sep = mm::separation_distance(x, k1, k2).value;
        result.record(mm::separation_distance(scaled, k1, k2).value <= alpha * sep + kExact, "Sep under scaling");
        result.record(mm::separation_distance(line, k1, k2).value <= alpha * sep + kExact, "Sep under a Lipschitz map");
      }
    }
  }

  double previous = 0.0;
  for (double kappa = 0.95; kappa > 0.0; kappa -= 0.05) {
    const double diam = mm::partial_diameter(x, 1.0 - kappa);
    result.record(diam >= previous, "partial diameter monotone in kappa");
    previous = diam;
  }
  previous = 1.0;
  for (double r = 0.05; r < x.diameter() + 0.5; r += 0.05) {
    const double alpha = mm::concentration_function(x, r);
    result.record(alpha <= previous, "concentration function monotone in r");
    previous = alpha;
  }
  for (double k1 : grid) {
    for (std::size_t j = 1; j < std::size(grid); ++j) {
      result.record(mm::separation_distance(x, k1, grid[j]).value <= mm::separation_distance(x, k1, grid[j - 1]).value,
                    "Sep monotone in kappa2");
      result.record(mm::separation_distance(x, grid[j], k1).value <= mm::separation_distance(x, grid[j - 1], k1).value,
                    "Sep monotone in kappa1");
    }
  }
}

void invariants_suite(SuiteResult& result, const VerifyOptions& options) {
  std::mt19937_64 rng(options.seed + 3);
  for (int k = 0; k < 20; ++k) {
    check_mm_space(result, random_mm_space(rng, std::uniform_int_distribution<std::size_t>(2, 10)(rng)));
  }
  if (options.mm_space) check_mm_space(result, *options.mm_space);

  // Concentration function of small ℓ¹ products of two-point spaces.
  std::uniform_real_distribution<double> length(0.2, 2.0);
  for (std::size_t factors = 1; factors <= 3; ++factors) {
    std::vector<mm::FiniteMMSpace> parts;
    std::vector<double> diameters;
    for (std::size_t i = 0; i < factors; ++i) {
      const double d = length(rng);
      Eigen::MatrixXd m(2, 2);
      m << 0.0, d, d, 0.0;
      parts.push_back(mm::FiniteMMSpace::make(m, {0.5, 0.5}));
      diameters.push_back(d);
    }
    const auto product = mm::l1_product(parts);
    for (double r = 0.1; r < 6.0; r += 0.1) {
      const double alpha = mm::concentration_function(product, r);
      const double bound = bounds::ledoux_concentration_bound(r, diameters);
      result.record(alpha <= bound + kExact, describe("alpha - ledoux bound", alpha - bound));
    }
  }
}

void crad_suite(SuiteResult& result, const VerifyOptions& options) {
  const std::vector<double> kappas{0.1, 0.25, 0.5};
  auto check = [&](const auto& measure) {
    using S = typename std::decay_t<decltype(measure)>::Space;
    for (std::size_t n : {25, 100}) {
      for (const auto& row : mc::estimate_crad_of_mean<S>({measure, n, 10000, {0.0}, options.seed, 0.99, options.workers}, kappas)) {
        result.record(row.computed && row.within_bound() && row.empirical <= row.bound,
                      describe("empirical CRad - bound", row.empirical - row.bound));
      }
    }
  };
  check(fixtures::tripod_leaf_measure());
  check(fixtures::hyperbolic_triangle_measure());
}

void drift_suite(SuiteResult& result, const VerifyOptions& options) {
  auto check = [&](const auto& measure) {
    using S = typename std::decay_t<decltype(measure)>::Space;
    for (std::size_t n : {5, 25, 100}) {
      const auto drift = mc::estimate_mean_drift<S>({measure, n, 10000, {0.0}, options.seed, 0.99, options.workers});
      result.record(drift.within_bound(), describe("drift - bound", drift.estimate - drift.bound));
    }
  };
  check(fixtures::tripod_leaf_measure());
  check(fixtures::hyperbolic_triangle_measure());
  check(fixtures::two_point_line_measure());
}

}  // namespace

void SuiteResult::record(bool ok, const std::string& what) {
  ++total;
  if (ok) {
    ++passed;
  } else if (failures.size() < kMaxReportedFailures) {
    failures.push_back(what);
  }
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"cat0",  "convexity",  "lipschitz", "variance",
                                              "sturm", "invariants", "crad",      "drift"};
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& options) {
  SuiteResult result;
  result.name = name;
  if (name == "cat0") {
    cat0_suite(result, options);
  } else if (name == "convexity") {
    convexity_suite(result, options);
  } else if (name == "lipschitz") {
    lipschitz_suite(result, options);
  } else if (name == "variance") {
    variance_suite(result, options);
  } else if (name == "sturm") {
    sturm_suite(result, options);
  } else if (name == "invariants") {
    invariants_suite(result, options);
  } else if (name == "crad") {
    crad_suite(result, options);
  } else if (name == "drift") {
    drift_suite(result, options);
  } else {
    throw DomainError("unknown suite \"" + name + "\"");
  }
  return result;
}

}  // namespace catzero::cli
