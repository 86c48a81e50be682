#include <vector>

#include "doctest.h"

#include "polyassign/engine.hpp"
#include "polyassign/error.hpp"
#include "support/instances.hpp"

using namespace polyassign;
using polyassign::testing::InstanceGen;

namespace {

Scenario make(Shape shape, std::vector<int> caps, std::vector<double> arrivals, Metric metric = Metric::kCycle) {
  Scenario sc;
  sc.name = "t";
  sc.shape = shape;
  sc.metric = metric;
  sc.capacities = std::move(caps);
  for (double s : arrivals) sc.arrivals.push_back({s});
  return sc;
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("triangle cascade, capacity two") {
  const auto rec = run_greedy(make(Shape::triangle(1.0), {2, 2, 2}, {0.5, 0.5, 0, 0, 0, 0}));
  REQUIRE(rec.steps.size() == 6);
  const std::vector<int> facility{0, 0, 1, 1, 2, 2};
  const std::vector<double> cost{0.5, 0.5, 1, 1, 1, 1};
  for (int i = 0; i < 6; ++i) {
    CHECK(rec.steps[i].customer == i);
    CHECK(rec.steps[i].facility == facility[i]);
    CHECK(rec.steps[i].cost == cost[i]);
  }
  CHECK(rec.total_cost == 5.0);
}

TEST_CASE("ties go to the lowest id") {
  // s = 0.5 on the unit triangle is equidistant from F0 and F1
  auto rec = run_greedy(make(Shape::triangle(1.0), {1, 1, 1}, {0.5}));
  CHECK(rec.steps[0].facility == 0);
  // second customer at s = 2 finds F2 full; F1 and F3 are both 1 away
  rec = run_greedy(make(Shape::square(1.0), {1, 1, 1, 1}, {2.0, 2.0}));
  CHECK(rec.steps[0].facility == 2);
  CHECK(rec.steps[1].facility == 1);
  CHECK(rec.steps[1].cost == 1.0);
}

TEST_CASE("full facilities are skipped") {
  const auto rec = run_greedy(make(Shape::square(1.0), {1, 1, 1, 1}, {0.0, 0.0, 0.0}));
  CHECK(rec.steps[1].facility == 1);  // F1 and F3 tie at distance 1
  CHECK(rec.steps[2].facility == 3);
  CHECK(rec.total_cost == 2.0);
}

TEST_CASE("exhausted capacity leaves state untouched") {
  const Shape tri = Shape::triangle(1.0);
  const std::vector<int> caps{1, 1, 1};
  GreedyState state = make_greedy_state(3);
  for (double s : {0.0, 1.0, 2.0}) greedy_step(tri, Metric::kCycle, caps, state, {s});
  const GreedyState before = state;
  try {
    greedy_step(tri, Metric::kCycle, caps, state, {0.5});
    FAIL("expected capacity error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCapacityExhausted);
  }
  CHECK(state.loads == before.loads);
  CHECK(state.record == before.record);
  CHECK_THROWS_AS(run_greedy(make(tri, {1, 1, 1}, {0, 0, 0, 0})), Error);
}

TEST_CASE("path metric does not wrap") {
  // customer near the end of the square boundary: cycle wraps to F0, path goes to F3
  CHECK(run_greedy(make(Shape::square(1.0), {1, 1, 1, 1}, {3.75})).steps[0].facility == 0);
  CHECK(run_greedy(make(Shape::square(1.0), {1, 1, 1, 1}, {3.75}, Metric::kPath)).steps[0].facility == 3);
}

TEST_CASE("greedy is nearest-free at every step (random scenarios)") {
  InstanceGen gen(1234);
  for (int trial = 0; trial < 1000; ++trial) {
    const ShapeKind kind = polyassign::testing::kShapeKinds[trial % 4];
    const Metric metric = polyassign::testing::kMetrics[(trial / 4) % 3];
    const Scenario sc = gen.scenario(kind, metric, 12);
    const auto rec = run_greedy(sc);
    REQUIRE(rec.steps.size() == sc.arrivals.size());
    const auto sites = sc.shape.sites();
    std::vector<int> load(sites.size(), 0);
    double total = 0.0;
    for (std::size_t i = 0; i < rec.steps.size(); ++i) {
      const Assignment& a = rec.steps[i];
      CHECK(load[a.facility] < sc.capacities[a.facility]);
      CHECK(a.cost == distance(sc.shape, metric, sc.arrivals[i], {sites[a.facility]}));
      for (std::size_t j = 0; j < sites.size(); ++j) {
        if (load[j] >= sc.capacities[j]) continue;
        const double dj = distance(sc.shape, metric, sc.arrivals[i], {sites[j]});
        CHECK(a.cost <= dj);
        if (dj == a.cost) CHECK(a.facility <= static_cast<int>(j));
      }
      ++load[a.facility];
      total += a.cost;
    }
    CHECK(rec.total_cost == total);
  }
}

}  // TEST_SUITE
