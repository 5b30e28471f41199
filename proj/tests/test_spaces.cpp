#include "doctest.h"
#include "oracles.hpp"

#include "catzero/errors.hpp"
#include "catzero/spaces/euclidean.hpp"
#include "catzero/spaces/hyperboloid.hpp"
#include "catzero/spaces/metric_tree.hpp"
#include "catzero/spaces/product.hpp"
#include "catzero/spaces/random.hpp"

#include <cmath>
#include <random>

using namespace catzero;

namespace {

struct RandomTree {
  MetricTree tree;
  std::vector<oracle::Edge> edges;
  int vertices;
};

RandomTree make_random_tree(std::mt19937_64& rng, int vertices) {
  std::uniform_real_distribution<double> length(0.2, 2.0);
  std::vector<std::int64_t> ids;
  std::vector<MetricTree::Edge> edges;
  std::vector<oracle::Edge> raw;
  for (int v = 0; v < vertices; ++v) {
    ids.push_back(v);
    if (v == 0) continue;
    const int parent = std::uniform_int_distribution<int>(0, v - 1)(rng);
    const double l = length(rng);
    edges.push_back({parent, v, l});
    raw.push_back({parent, v, l});
  }
  return {MetricTree(ids, edges), raw, vertices};
}

std::vector<double> to_vec(const Coords& c) { return {c.data(), c.data() + c.size()}; }

template <class S>
void metric_axioms(const S& space, std::mt19937_64& rng) {
  for (int k = 0; k < 10000; ++k) {
    const auto x = random_point(space, rng);
    const auto y = random_point(space, rng);
    const auto z = random_point(space, rng);
    REQUIRE(space.distance(x, y) == space.distance(y, x));
    REQUIRE(space.distance(x, x) == 0.0);
    REQUIRE(space.distance(x, z) <= space.distance(x, y) + space.distance(y, z) + 1e-9);
  }
}

template <class S>
void geodesic_consistency(const S& space, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 2000; ++k) {
    const auto p = random_point(space, rng);
    const auto q = random_point(space, rng);
    const double t = unit(rng);
    const double s = unit(rng);
    const double d = space.distance(p, q);
    const double got = space.distance(space.geodesic_point(p, q, t), space.geodesic_point(p, q, s));
    REQUIRE(got == doctest::Approx(std::abs(t - s) * d).epsilon(1e-9).scale(1.0));
  }
}

template <class S>
void cat0_properties(const S& space, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 10000; ++k) {
    const auto x = random_point(space, rng);
    const auto y = random_point(space, rng);
    const auto z = random_point(space, rng);
    const auto w = random_point(space, rng);
    REQUIRE(cat0_midpoint_slack(space, x, y, z) >= -1e-9);
    REQUIRE(geodesic_convexity_slack(space, x, y, z, w, unit(rng)) >= -1e-9);
  }
}

}  // namespace

TEST_CASE("tree construction rejects malformed input") {
  using E = MetricTree::Edge;
  CHECK_THROWS_AS(MetricTree({0, 1}, {}), ValidationError);
  CHECK_THROWS_AS(MetricTree({0, 1, 2}, {{0, 1, 1.0}}), ValidationError);
  CHECK_THROWS_AS(MetricTree({0, 1}, {E{0, 1, 0.0}}), ValidationError);
  CHECK_THROWS_AS(MetricTree({0, 1}, {E{0, 1, -1.0}}), ValidationError);
  CHECK_THROWS_AS(MetricTree({0, 1}, {E{0, 7, 1.0}}), ValidationError);
  CHECK_THROWS_AS(MetricTree({0, 0}, {E{0, 0, 1.0}}), ValidationError);
  CHECK_THROWS_AS(MetricTree({0, 1, 2, 3}, {E{0, 1, 1.0}, E{1, 0, 1.0}, E{2, 3, 1.0}}), ValidationError);
}

TEST_CASE("tree points are validated and canonical on vertices") {
  const auto tripod = MetricTree::tripod();
  CHECK_THROWS_AS(tripod.point(5, 0.1), InvalidPointError);
  CHECK_THROWS_AS(tripod.point(0, 1.5), InvalidPointError);
  CHECK_THROWS_AS(tripod.validate(TreePoint{0, -0.1}), InvalidPointError);
  CHECK_THROWS_AS(tripod.vertex_point(9), InvalidPointError);
  // the centre seen from each branch is the same point
  CHECK(tripod.branch_point(1, 0.0) == tripod.branch_point(2, 0.0));
  CHECK(tripod.branch_point(3, 0.0) == tripod.vertex_point(0));
  CHECK(tripod.branch_point(2, 1.0) == tripod.vertex_point(2));
}

TEST_CASE("tripod distances and geodesics") {
  const auto tripod = MetricTree::tripod();
  const auto a = tripod.branch_point(1, 1.0);
  const auto b = tripod.branch_point(2, 1.0);
  CHECK(tripod.distance(a, b) == 2.0);
  CHECK(tripod.distance(a, a) == 0.0);
  CHECK(tripod.geodesic_point(a, b, 0.5) == tripod.vertex_point(0));
  CHECK(tripod.geodesic_point(a, b, 0.0) == a);
  CHECK(tripod.geodesic_point(a, b, 1.0) == b);
  CHECK(tripod.geodesic_point(a, b, 0.75) == tripod.branch_point(2, 0.5));
  CHECK_THROWS_AS(tripod.geodesic_point(a, b, 1.5), DomainError);
  CHECK_THROWS_AS(tripod.geodesic_point(a, b, -0.1), DomainError);
}

TEST_CASE("tripod CAT(0) examples") {
  const auto tripod = MetricTree::tripod();
  const auto l1 = tripod.branch_point(1, 1.0);
  const auto l2 = tripod.branch_point(2, 1.0);
  const auto l3 = tripod.branch_point(3, 1.0);
  CHECK(cat0_midpoint_slack(tripod, l1, l2, l3) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(cat0_midpoint_slack(tripod, l1, l2, l2) == 0.0);
  CHECK(geodesic_convexity_slack(tripod, l1, l2, l1, l3, 0.75) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(geodesic_convexity_slack(tripod, l1, l2, l1, l2, 0.3) == 0.0);
}

TEST_CASE("tree distance agrees exactly with Dijkstra on the subdivided graph") {
  std::mt19937_64 rng(11);
  for (int instance = 0; instance < 10; ++instance) {
    const auto rt = make_random_tree(rng, 12);
    std::uniform_int_distribution<int> edge(0, static_cast<int>(rt.edges.size()) - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
      const int e1 = edge(rng);
      const int e2 = edge(rng);
      const double o1 = unit(rng) * rt.edges[e1].length;
      const double o2 = unit(rng) * rt.edges[e2].length;
      // the library sums from the smaller point, so start Dijkstra there
      const oracle::EdgePoint a{e1, o1};
      const oracle::EdgePoint b{e2, o2};
      const bool swap = std::pair(e2, o2) < std::pair(e1, o1);
      const double expected = oracle::dijkstra_distance(rt.vertices, rt.edges, swap ? b : a, swap ? a : b);
      const double got = rt.tree.distance(rt.tree.point(e1, o1), rt.tree.point(e2, o2));
      REQUIRE(got == expected);
    }
  }
}

TEST_CASE("tree vertex distances match Floyd-Warshall") {
  std::mt19937_64 rng(5);
  const auto rt = make_random_tree(rng, 15);
  const auto table = oracle::floyd(rt.vertices, rt.edges);
  for (int a = 0; a < rt.vertices; ++a) {
    for (int b = 0; b < rt.vertices; ++b) {
      CHECK(rt.tree.distance(rt.tree.vertex_point(a), rt.tree.vertex_point(b)) ==
            doctest::Approx(table[a][b]).epsilon(1e-14));
    }
  }
}

TEST_CASE("log and exp are unsupported on trees") {
  const auto tripod = MetricTree::tripod();
  const auto p = tripod.branch_point(1, 0.5);
  CHECK_THROWS_AS(log_map(tripod, p, p), UnsupportedOperationError);
  CHECK_THROWS_AS(exp_map(tripod, p, TangentVector{}), UnsupportedOperationError);
}

TEST_CASE("euclidean geodesics, log and exp") {
  const Euclidean r2(2);
  const auto p = r2.zero();
  const auto q = r2.point({2.0, 0.0});
  CHECK(r2.geodesic_point(p, q, 0.25) == r2.point({0.5, 0.0}));
  CHECK(r2.distance(p, q) == 2.0);
  const auto v = r2.log_map(r2.point({1.0, 1.0}), r2.point({3.0, -1.0}));
  CHECK(v.components[0] == 2.0);
  CHECK(v.components[1] == -2.0);
  CHECK(r2.exp_map(r2.point({1.0, 1.0}), v) == r2.point({3.0, -1.0}));
  CHECK(r2.log_map(q, q).components.norm() == 0.0);
  CHECK_THROWS_AS(r2.exp_map(p, v), DomainError);  // v is based elsewhere
  CHECK_THROWS_AS(Euclidean(0), ValidationError);
  CHECK_THROWS_AS(r2.validate(EuclideanPoint{Coords::Zero(3)}), InvalidPointError);

  // parallel segments keep their distance
  const auto a = r2.point({0.0, 0.0});
  const auto b = r2.point({1.0, 2.0});
  const auto c = r2.point({3.0, 0.0});
  const auto d = r2.point({4.0, 2.0});
  CHECK(geodesic_convexity_slack(r2, a, b, c, d, 0.4) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
}

TEST_CASE("hyperboloid distance example and arclength") {
  const Hyperboloid h2(2);
  const auto p = h2.origin();
  Coords c(3);
  c << std::cosh(1.0), std::sinh(1.0), 0.0;
  const auto q = h2.point(c);
  CHECK(h2.distance(p, q) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(h2.distance(q, q) == 0.0);

  // arclength of the sampled geodesic by summing Minkowski chord lengths
  const int steps = 20000;
  double length = 0.0;
  auto prev = p;
  for (int k = 1; k <= steps; ++k) {
    const auto next = h2.geodesic_point(p, q, static_cast<double>(k) / steps);
    const Coords delta = next.coords - prev.coords;
    length += std::sqrt(Hyperboloid::minkowski(delta, delta));
    prev = next;
  }
  CHECK(length == doctest::Approx(1.0).epsilon(1e-8));

  const auto v = h2.log_map(p, q);
  CHECK(v.components[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(v.components[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(v.components[2] == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(h2.log_map(q, q).components.norm() == 0.0);
  CHECK(h2.exp_map(p, TangentVector{p.coords, Coords::Zero(3)}) == p);
}

TEST_CASE("hyperboloid agrees with the arccosh formula and round-trips exp/log") {
  std::mt19937_64 rng(3);
  for (int dim : {1, 2, 5}) {
    const Hyperboloid h(dim);
    for (int k = 0; k < 1000; ++k) {
      const auto p = random_point(h, rng);
      const auto q = random_point(h, rng);
      const double d = h.distance(p, q);
      CHECK(d == doctest::Approx(oracle::arccosh_distance(to_vec(p.coords), to_vec(q.coords))).epsilon(1e-7));
      const auto back = h.exp_map(p, h.log_map(p, q));
      REQUIRE((back.coords - q.coords).norm() <= 1e-8 * std::max(1.0, q.coords.norm()));
      REQUIRE(std::abs(Hyperboloid::minkowski(back.coords, back.coords) + 1.0) <= 1e-9 * back.coords[0] * back.coords[0]);
    }
  }
}

TEST_CASE("hyperboloid validation") {
  const Hyperboloid h2(2);
  Coords bad(3);
  bad << 1.0, 1.0, 0.0;
  CHECK_THROWS_AS(h2.point(bad), InvalidPointError);
  Coords lower(3);
  lower << -1.0, 0.0, 0.0;
  CHECK_THROWS_AS(h2.point(lower), InvalidPointError);
  CHECK_THROWS_AS(h2.point(Coords::Zero(2)), InvalidPointError);
  CHECK_THROWS_AS(Hyperboloid(0), ValidationError);
  const auto p = h2.origin();
  const auto q = h2.lift(Coords::Constant(2, 0.3));
  Coords not_tangent(3);
  not_tangent << 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(h2.exp_map(p, TangentVector{p.coords, not_tangent}), DomainError);
  CHECK_THROWS_AS(h2.exp_map(p, h2.log_map(q, p)), DomainError);  // mismatched base
}

TEST_CASE("metric axioms") {
  std::mt19937_64 rng(17);
  metric_axioms(random_tree(rng, 9), rng);
  metric_axioms(Hyperboloid(2), rng);
  metric_axioms(Hyperboloid(4), rng);
  metric_axioms(Euclidean(3), rng);
}

TEST_CASE("geodesic consistency") {
  std::mt19937_64 rng(19);
  geodesic_consistency(random_tree(rng, 9), rng);
  geodesic_consistency(Hyperboloid(2), rng);
  geodesic_consistency(Euclidean(3), rng);
}

TEST_CASE("CAT(0) midpoint and convexity slacks are nonnegative") {
  std::mt19937_64 rng(23);
  cat0_properties(random_tree(rng, 9), rng);
  cat0_properties(Hyperboloid(2), rng);
  cat0_properties(Hyperboloid(3), rng);
  cat0_properties(Euclidean(3), rng);
}

TEST_CASE("euclidean midpoint slack vanishes") {
  std::mt19937_64 rng(29);
  const Euclidean r4(4);
  for (int k = 0; k < 1000; ++k) {
    CHECK(std::abs(cat0_midpoint_slack(r4, random_point(r4, rng), random_point(r4, rng), random_point(r4, rng))) <=
          1e-10);
  }
}

TEST_CASE("l1 product distance") {
  const Euclidean r1(1);
  const L1Product<Euclidean> prod(r1, 3);
  ProductPoint<EuclideanPoint> x{{r1.point({0.0}), r1.point({1.0}), r1.point({2.0})}};
  ProductPoint<EuclideanPoint> y{{r1.point({1.0}), r1.point({1.0}), r1.point({-1.0})}};
  CHECK(prod.distance(x, y) == 4.0);
  CHECK_THROWS_AS(prod.validate(ProductPoint<EuclideanPoint>{{r1.point({0.0})}}), InvalidPointError);
}
