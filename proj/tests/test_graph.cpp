#include <catch2/catch_amalgamated.hpp>

#include "ctd/graph.hpp"
#include "helpers.hpp"

using namespace ctd;
using namespace ctd::testutil;

TEST_CASE("arc metrics convert length to time and money per class") {
  CostModel m;
  m.spv_speed_mph = 40.0;
  m.spv_rate_per_mile = 0.56;
  m.dv_speed_mph = 30.0;
  m.dv_rate_per_mile = 1.5;
  Network net({0, 1, 2}, {{0, 1, 2.0}, {1, 2, 1.0}, {2, 0, 0.5}});

  auto spv = arc_metrics(net, 0, m, VehicleClass::Spv);
  CHECK(spv.travel_time_min == Catch::Approx(3.0));
  CHECK(spv.cost_dollars == Catch::Approx(1.12));

  auto dv = arc_metrics(net, 1, m, VehicleClass::Dv);
  CHECK(dv.travel_time_min == Catch::Approx(2.0));
  CHECK(dv.cost_dollars == Catch::Approx(1.50));

  CostModel fast;
  fast.spv_speed_mph = 60.0;
  fast.spv_rate_per_mile = 1.0;
  auto half = arc_metrics(net, 2, fast, VehicleClass::Spv);
  CHECK(half.travel_time_min == Catch::Approx(0.5));
  CHECK(half.cost_dollars == Catch::Approx(0.50));

  CHECK_THROWS_AS(net.arc(99), std::out_of_range);
}

TEST_CASE("network construction rejects malformed arcs") {
  CHECK_THROWS_AS(Network({0, 1}, {{0, 0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(Network({0, 1}, {{0, 7, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(Network({0, 1}, {{0, 1, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(Network({0, 1}, {{0, 1, -2.0}}), std::invalid_argument);
}

TEST_CASE("shortest path on a line sums per-arc metrics") {
  CostModel m;  // defaults: SPV 40 mph, $0.56/mi
  Network net = line_network(3);
  auto r = shortest_path(net, 0, 2, m, VehicleClass::Spv);
  REQUIRE(r.nodes == std::vector<NodeId>{0, 1, 2});
  CHECK(r.total_time_min == Catch::Approx(3.0));
  CHECK(r.total_cost_dollars == Catch::Approx(2 * 0.56));
  CHECK(r.total_miles == Catch::Approx(2.0));
}

TEST_CASE("shortest path identity and unreachable cases") {
  CostModel m;
  Network net({0, 1, 2}, {{0, 1, 1.0}});
  auto r = shortest_path(net, 1, 1, m, VehicleClass::Dv);
  CHECK(r.nodes == std::vector<NodeId>{1});
  CHECK(r.total_time_min == 0.0);
  CHECK(r.total_cost_dollars == 0.0);
  CHECK(r.total_miles == 0.0);
  CHECK_THROWS_AS(shortest_path(net, 0, 2, m, VehicleClass::Spv), NoPathError);
  CHECK_THROWS_AS(shortest_path(net, 0, 99, m, VehicleClass::Spv), std::out_of_range);
}

TEST_CASE("shortest path picks the cheaper branch of a diamond") {
  // s=0 -> a=1 -> t=3 is 4 miles, s -> b=2 -> t is 3 miles
  CostModel m;
  Network net({0, 1, 2, 3}, {{0, 1, 2.0}, {1, 3, 2.0}, {0, 2, 1.5}, {2, 3, 1.5}});
  auto r = shortest_path(net, 0, 3, m, VehicleClass::Spv);
  CHECK(r.nodes == std::vector<NodeId>{0, 2, 3});
  CHECK(r.total_miles == Catch::Approx(3.0));
}

TEST_CASE("equal-length ties resolve to the smallest predecessor id") {
  // two 2-mile routes 0->1->3 and 0->2->3; the tie keeps predecessor 1
  CostModel m;
  Network net({0, 1, 2, 3}, {{0, 1, 1.0}, {1, 3, 1.0}, {0, 2, 1.0}, {2, 3, 1.0}});
  auto r = shortest_path(net, 0, 3, m, VehicleClass::Spv);
  CHECK(r.nodes == std::vector<NodeId>{0, 1, 3});
}

TEST_CASE("path totals equal per-arc sums exactly on random graphs") {
  detail::Rng rng(42);
  CostModel m;
  for (int trial = 0; trial < 25; ++trial) {
    Network net = random_network(rng, 20);
    const NodeId s = rng.uniform_int(0, 19);
    const NodeId t = rng.uniform_int(0, 19);
    PathResult r;
    try {
      r = shortest_path(net, s, t, m, VehicleClass::Dv);
    } catch (const NoPathError&) {
      continue;
    }
    double time = 0, cost = 0, miles = 0;
    for (std::size_t i = 0; i + 1 < r.nodes.size(); ++i) {
      const auto ai = net.arc_between(r.nodes[i], r.nodes[i + 1]);
      REQUIRE(ai != Network::npos);
      const auto am = arc_metrics(net, ai, m, VehicleClass::Dv);
      time += am.travel_time_min;
      cost += am.cost_dollars;
      miles += net.arc(ai).length_miles;
    }
    CHECK(r.total_time_min == time);
    CHECK(r.total_cost_dollars == cost);
    CHECK(r.total_miles == miles);
  }
}

TEST_CASE("shortest-path times satisfy the triangle property") {
  detail::Rng rng(7);
  CostModel m;
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Network net = random_network(rng, 15);
    DistCache cache(net, m);
    const NodeId s = rng.uniform_int(0, 14);
    const NodeId t = rng.uniform_int(0, 14);
    const NodeId mid = rng.uniform_int(0, 14);
    const double st = cache.time_minutes(VehicleClass::Spv, s, t);
    const double via = cache.time_minutes(VehicleClass::Spv, s, mid) +
                       cache.time_minutes(VehicleClass::Spv, mid, t);
    if (st < SpTree::kInf) {
      CHECK(st <= via + 1e-9);
      ++checked;
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("identical queries return identical paths") {
  detail::Rng rng(99);
  Network net = random_network(rng, 25);
  CostModel m;
  for (NodeId t = 1; t < 25; ++t) {
    try {
      auto a = shortest_path(net, 0, t, m, VehicleClass::Spv);
      auto b = shortest_path(net, 0, t, m, VehicleClass::Spv);
      CHECK(a.nodes == b.nodes);
      CHECK(a.total_time_min == b.total_time_min);
    } catch (const NoPathError&) {
    }
  }
}

TEST_CASE("dist cache agrees with direct queries") {
  detail::Rng rng(5);
  Network net = random_network(rng, 18);
  CostModel m;
  DistCache cache(net, m);
  for (int i = 0; i < 30; ++i) {
    const NodeId s = rng.uniform_int(0, 17);
    const NodeId t = rng.uniform_int(0, 17);
    if (!cache.reachable(s, t)) continue;
    auto direct = shortest_path(net, s, t, m, VehicleClass::Dv);
    CHECK(cache.miles(s, t) == Catch::Approx(direct.total_miles).margin(1e-12));
    CHECK(cache.path(s, t) == direct.nodes);
  }
}
