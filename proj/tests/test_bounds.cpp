#include "doctest.h"

#include "catzero/bounds.hpp"
#include "catzero/errors.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace catzero;
using namespace catzero::bounds;

namespace {

const double kPi = std::acos(-1.0);

// Direct transcription of the constants, evaluated in long double.
long double a_direct(int m) {
  const long double e = (m + 1.0L) / (4.0L * m - 2.0L);
  return std::exp(1.0L / (2 * m)) * (1 + std::sqrt(static_cast<long double>(kPi)) * std::exp(e) *
                                             std::exp(static_cast<long double>(kPi * kPi)) / 2);
}
long double a_tilde_direct(int m) {
  const long double e = (m + 1.0L) / (4.0L * m - 2.0L);
  return std::exp(1.0L / (4 * m)) * (1 + std::sqrt(static_cast<long double>(kPi)) * std::exp(e));
}

}  // namespace

TEST_CASE("rtree and claim bound values") {
  CHECK(rtree_tail_bound({1, 0.0, 1.0, 1}) == doctest::Approx(4.0 * std::exp(4.0 / 75)).epsilon(1e-15));
  CHECK(rtree_tail_bound({1, 0.0, 1.0, 1}) == doctest::Approx(4.219).epsilon(1e-4));
  CHECK(rtree_tail_bound({150, 1.0, 1.0, 1}) == doctest::Approx(1.552).epsilon(1e-3));
  CHECK(claim_tail_bound({1, 0.0, 1.0, 1}) == 4.0);
  CHECK(claim_tail_bound({75, 1.0, 1.0, 1}) == doctest::Approx(4.0 / std::exp(1.0)).epsilon(1e-15));
  CHECK(rtree_tail_bound({2000, 1.0, 2.0, 1}) == doctest::Approx(0.1505).epsilon(1e-3));
}

TEST_CASE("rtree bound is the claim bound with the exponent halved") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.01, 3.0);
  for (int k = 0; k < 1000; ++k) {
    const BoundQuery q{std::uniform_int_distribution<std::size_t>(1, 5000)(rng), u(rng), u(rng), 1};
    const BoundQuery halved{q.n, q.r / std::sqrt(2.0), q.diameter, 1};
    REQUIRE(rtree_tail_bound(q) == doctest::Approx(std::exp(4.0 / 75) * claim_tail_bound(halved)).epsilon(1e-13));
  }
}

TEST_CASE("hadamard constants") {
  const auto c1 = hadamard_constants(1);
  CHECK(c1.a_tilde == doctest::Approx(7.47).epsilon(0.01 / 7.47));
  CHECK(c1.a_tilde == doctest::Approx(std::exp(0.25) * (1 + std::sqrt(kPi) * std::exp(1.0))).epsilon(1e-14));
  CHECK(c1.a == doctest::Approx(7.68e4).epsilon(0.005));
  CHECK(c1.a == doctest::Approx(std::exp(0.5) * (1 + std::sqrt(kPi) / 2 * std::exp(1.0) * std::exp(kPi * kPi)))
                    .epsilon(1e-14));

  auto prev = c1;
  for (int m = 1; m <= 100; ++m) {
    const auto c = hadamard_constants(m);
    REQUIRE(c.a_tilde < c.a);
    REQUIRE(std::isfinite(c.a));
    REQUIRE(c.a == doctest::Approx(static_cast<double>(a_direct(m))).epsilon(1e-13));
    REQUIRE(c.a_tilde == doctest::Approx(static_cast<double>(a_tilde_direct(m))).epsilon(1e-13));
    REQUIRE(c.a <= c1.a);
    REQUIRE(c.a_tilde <= c1.a_tilde);
    if (m > 1) {
      REQUIRE(c.a < prev.a);
      REQUIRE(c.a_tilde < prev.a_tilde);
    }
    prev = c;
  }

  const auto far = hadamard_constants(1000000);
  CHECK(far.a == doctest::Approx(1 + std::sqrt(kPi) / 2 * std::exp(0.25) * std::exp(kPi * kPi)).epsilon(1e-5));
  CHECK(far.a_tilde == doctest::Approx(1 + std::sqrt(kPi) * std::exp(0.25)).epsilon(1e-5));
  CHECK_THROWS_AS(hadamard_constants(0), DomainError);
}

TEST_CASE("hadamard tail bound") {
  for (int m : {1, 2, 7}) {
    const auto at_zero = hadamard_tail_bound({1, 0.0, 1.0, m});
    CHECK(at_zero.value == hadamard_constants(m).a_tilde);
    CHECK(at_zero.branch == Branch::kSecond);
  }
  const auto c2 = hadamard_constants(2);
  const auto v = hadamard_tail_bound({64, 1.0, 1.0, 2});
  CHECK(v.value == doctest::Approx(std::min(c2.a * std::exp(-2.0), c2.a_tilde * std::exp(-1.0))).epsilon(1e-15));
  CHECK(hadamard_tail_bound({64, 100.0, 1.0, 2}).branch == Branch::kFirst);
}

TEST_CASE("ledoux bounds") {
  const std::vector<double> one{1.0};
  CHECK(ledoux_deviation_bound(0.0, one) == 2.0);
  CHECK(ledoux_deviation_bound(1.0, one) == doctest::Approx(2 * std::exp(-0.5)).epsilon(1e-15));
  CHECK(ledoux_concentration_bound(0.0, one) == 1.0);
  CHECK(ledoux_concentration_bound(2.0, one) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  const std::vector<double> hundred(100, 1.0);
  CHECK(ledoux_deviation_bound(10.0, hundred) == doctest::Approx(1.213).epsilon(1e-3));
  for (double r = 0.0; r < 20.0; r += 0.5) CHECK(ledoux_concentration_bound(r, hundred) <= 1.0);
  CHECK_THROWS_AS(ledoux_deviation_bound(1.0, std::vector<double>{}), DomainError);
  CHECK_THROWS_AS(ledoux_deviation_bound(1.0, std::vector<double>{1.0, -1.0}), DomainError);
}

TEST_CASE("central radius bound") {
  CHECK(crad_bound(3, 4.0 / std::exp(2.0), 1.0) == doctest::Approx(5.0 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(crad_bound(100, 0.1, 2.0) == doctest::Approx(10.0 * std::sqrt(0.02 * std::log(40.0))).epsilon(1e-14));
  CHECK(std::isfinite(crad_bound(10, 1.0 - 1e-12, 1.0)));
  CHECK(crad_bound(10, 1.0 - 1e-12, 1.0) > 0.0);
  CHECK(crad_bound(10, 0.3, 2.0) == doctest::Approx(2.0 * crad_bound(10, 0.3, 1.0)).epsilon(1e-15));
  const double below = crad_bound(10, 0.5 - 1e-12, 1.0);
  const double at = crad_bound(10, 0.5, 1.0);
  CHECK(at / below == doctest::Approx(std::sqrt(1.5)).epsilon(1e-9));
  CHECK_THROWS_AS(crad_bound(10, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(crad_bound(10, 1.0, 1.0), DomainError);
}

TEST_CASE("mean drift bound") {
  CHECK(mean_drift_bound(4, 1.0) == 1.0);
  CHECK(mean_drift_bound(1, 3.0) == 6.0);
  CHECK(mean_drift_bound(7, 0.0) == 0.0);
}

TEST_CASE("general hadamard bound") {
  const ConcentrationProfile unit{1.0, 1.0};
  const auto c = general_hadamard_constants(unit, 1);
  CHECK(c.a_tilde == doctest::Approx(1 + std::sqrt(kPi) * std::exp(1.0)).epsilon(1e-14));
  CHECK(c.a_tilde == doctest::Approx(5.82).epsilon(1e-3));
  CHECK(general_hadamard_bound(0.0, unit, 1).value == std::min(c.a, c.a_tilde));
  CHECK(general_hadamard_bound(4.0, unit, 1).value ==
        doctest::Approx(std::min(c.a * std::exp(-2.0), c.a_tilde * std::exp(-1.0))).epsilon(1e-15));
  CHECK_THROWS_AS(general_hadamard_constants({0.0, 1.0}, 1), DomainError);
}

TEST_CASE("bounds decrease in r and n and are scale invariant") {
  std::mt19937_64 rng(2);
  // ranges keep every bound clear of underflow
  std::uniform_real_distribution<double> u(0.05, 3.0);
  std::uniform_real_distribution<double> diam(0.5, 3.0);
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 100)(rng);
    const double r = u(rng);
    const double d = diam(rng);
    const int m = std::uniform_int_distribution<int>(1, 10)(rng);
    const double lambda = u(rng);
    const BoundQuery q{n, r, d, m};
    const BoundQuery more_r{n, r * 1.1, d, m};
    const BoundQuery more_n{n + 1, r, d, m};
    const BoundQuery scaled{n, lambda * r, lambda * d, m};
    REQUIRE(rtree_tail_bound(more_r) < rtree_tail_bound(q));
    REQUIRE(rtree_tail_bound(more_n) < rtree_tail_bound(q));
    REQUIRE(rtree_tail_bound(scaled) == doctest::Approx(rtree_tail_bound(q)).epsilon(1e-12));
    REQUIRE(claim_tail_bound(more_r) < claim_tail_bound(q));
    REQUIRE(claim_tail_bound(more_n) < claim_tail_bound(q));
    REQUIRE(claim_tail_bound(scaled) == doctest::Approx(claim_tail_bound(q)).epsilon(1e-12));
    REQUIRE(hadamard_tail_bound(more_r).value < hadamard_tail_bound(q).value);
    REQUIRE(hadamard_tail_bound(more_n).value < hadamard_tail_bound(q).value);
    REQUIRE(hadamard_tail_bound(scaled).value == doctest::Approx(hadamard_tail_bound(q).value).epsilon(1e-12));
    const std::vector<double> ds{d};
    const std::vector<double> lds{lambda * d};
    REQUIRE(ledoux_deviation_bound(r * 1.1, ds) < ledoux_deviation_bound(r, ds));
    REQUIRE(ledoux_deviation_bound(lambda * r, lds) == doctest::Approx(ledoux_deviation_bound(r, ds)).epsilon(1e-12));
    REQUIRE(ledoux_concentration_bound(r * 1.1, ds) < ledoux_concentration_bound(r, ds));
  }
}

TEST_CASE("query validation and the point-mass limit") {
  CHECK_THROWS_AS(rtree_tail_bound({0, 1.0, 1.0, 1}), DomainError);
  CHECK_THROWS_AS(rtree_tail_bound({1, -1.0, 1.0, 1}), DomainError);
  CHECK_THROWS_AS(rtree_tail_bound({1, 1.0, -1.0, 1}), DomainError);
  CHECK_THROWS_AS(hadamard_tail_bound({1, 1.0, 1.0, 0}), DomainError);
  CHECK(rtree_tail_bound({5, 0.5, 0.0, 1}) == 0.0);
  CHECK(rtree_tail_bound({5, 0.0, 0.0, 1}) == rtree_tail_bound({5, 0.0, 1.0, 1}));
}
