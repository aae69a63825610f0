#include <catch2/catch_amalgamated.hpp>

#include "ctd/instance.hpp"
#include "helpers.hpp"

using namespace ctd;
using namespace ctd::testutil;

namespace {

// 0 = origin, 1 = depot, 2 = midpoint, 3 = destination
Instance detour_instance() {
  std::vector<Arc> arcs = {{0, 1, 2.0}, {1, 2, 2.5}, {2, 3, 2.5}, {0, 3, 6.0}};
  Instance inst = basic_instance(Network({0, 1, 2, 3}, arcs), 1);
  inst.spvs.push_back({1, 0, 3, 0.0, 600.0, 2, 60.0});
  return inst;
}

// Fills stop times from the pickup moment using the instance timing rules.
SpvPlan make_spv_plan(const Instance& inst, const Spv& s, std::vector<NodeId> route,
                      std::vector<PdoId> served) {
  DistCache cache(inst.network, inst.params.cost_model);
  SpvPlan plan;
  plan.route = std::move(route);
  plan.served_pdos = std::move(served);
  double t = spv_pickup_time(cache, inst, s, plan.served_pdos);
  plan.stop_times[plan.route.front()] = t;
  t += inst.params.service_time_min;
  for (std::size_t i = 0; i + 1 < plan.route.size(); ++i) {
    t += route_metrics(cache, VehicleClass::Spv, {plan.route[i], plan.route[i + 1]}).time_min;
    plan.stop_times[plan.route[i + 1]] = t;
  }
  return plan;
}

DvPlan make_dv_plan(const Instance& inst, std::vector<NodeId> stops, std::vector<PdoId> served) {
  DistCache cache(inst.network, inst.params.cost_model);
  DvPlan plan;
  plan.stops = std::move(stops);
  plan.served_pdos = std::move(served);
  double t = 0.0;
  for (PdoId pid : plan.served_pdos) t = std::max(t, inst.pdo(pid).earliest_pickup);
  plan.stop_times.push_back(t);
  for (std::size_t i = 0; i + 1 < plan.stops.size(); ++i) {
    t += cache.time_minutes(VehicleClass::Dv, plan.stops[i], plan.stops[i + 1]);
    plan.stop_times.push_back(t);
  }
  return plan;
}

}  // namespace

TEST_CASE("detour cost composes access leg, route and direct trip") {
  Instance inst = detour_instance();
  const double c = spv_detour_cost(inst, inst.spvs[0], {1, 2, 3});
  CHECK(c == Catch::Approx(1.12 + 2.80 - 3.36));
}

TEST_CASE("detour cost is exactly zero for a depot-origin driver on the shortest route") {
  Network net({0, 1, 2, 3}, {{0, 1, 1.0}, {1, 3, 1.0}, {0, 2, 1.5}, {2, 3, 1.5}});
  Instance inst = basic_instance(std::move(net), 0);
  inst.spvs.push_back({7, 0, 3, 0.0, 600.0, 1, 60.0});
  DistCache cache(inst.network, inst.params.cost_model);
  const auto direct = cache.path(0, 3);
  CHECK(spv_detour_cost(inst, inst.spvs[0], direct) == 0.0);
}

TEST_CASE("detour cost of the longer diamond branch is the arc-cost difference") {
  Network net({0, 1, 2, 3}, {{0, 1, 1.0}, {1, 3, 1.0}, {0, 2, 1.5}, {2, 3, 1.5}});
  Instance inst = basic_instance(std::move(net), 0);
  inst.spvs.push_back({7, 0, 3, 0.0, 600.0, 1, 60.0});
  // longer branch is 3 miles vs 2: difference of 1 mile at the SPV rate
  CHECK(spv_detour_cost(inst, inst.spvs[0], {0, 2, 3}) == Catch::Approx(1.0 * 0.56));
}

TEST_CASE("detour cost rejects malformed routes") {
  Instance inst = detour_instance();
  CHECK_THROWS_AS(spv_detour_cost(inst, inst.spvs[0], {2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(spv_detour_cost(inst, inst.spvs[0], {1, 2}), std::invalid_argument);
}

TEST_CASE("total objective sums dv variable and fixed costs") {
  Instance inst = basic_instance(line_network(3), 0);
  inst.pdos.push_back({0, 2, 0.0, 600.0, 1});
  Solution sol;
  sol.dv_plans.push_back(make_dv_plan(inst, {0, 2, 0}, {0}));
  sol.cost_breakdown = total_objective(inst, sol);
  CHECK(sol.cost_breakdown.dv_variable_cost == Catch::Approx(4 * 1.5));  // 4 miles round trip
  CHECK(sol.cost_breakdown.dv_fixed_cost == Catch::Approx(120.0));
  CHECK(sol.cost_breakdown.total == Catch::Approx(126.0));
  CHECK(sol.cost_breakdown.dv_vmt == Catch::Approx(4.0));
}

TEST_CASE("total objective charges compensation per order") {
  Instance inst = detour_instance();
  inst.pdos.push_back({0, 2, 0.0, 600.0, 1});
  inst.pdos.push_back({1, 2, 0.0, 600.0, 1});
  Solution sol;
  auto& plan = sol.spv_plans[1];
  plan = make_spv_plan(inst, inst.spvs[0], {1, 2, 3}, {0, 1});
  sol.cost_breakdown = total_objective(inst, sol);
  CHECK(sol.cost_breakdown.spv_detour_cost == Catch::Approx(0.56));
  CHECK(sol.cost_breakdown.spv_pdo_compensation == Catch::Approx(3.0));
  CHECK(sol.cost_breakdown.total == Catch::Approx(3.56));
}

TEST_CASE("total objective of an empty solution is zero") {
  Instance inst = basic_instance(line_network(3), 0);
  Solution sol;
  sol.cost_breakdown = total_objective(inst, sol);
  CHECK(sol.cost_breakdown.total == 0.0);
  CHECK(validate_solution(inst, sol).ok());
}

TEST_CASE("origins-at-depot removes exactly the access-leg miles") {
  Instance inst = detour_instance();
  inst.pdos.push_back({0, 2, 0.0, 600.0, 1});
  Solution sol;
  sol.spv_plans[1] = make_spv_plan(inst, inst.spvs[0], {1, 2, 3}, {0});
  const auto with_leg = total_objective(inst, sol);

  Instance at_depot = inst;
  at_depot.spv_origins_at_depot = true;
  const auto without_leg = total_objective(at_depot, sol);
  CHECK(with_leg.spv_vmt - without_leg.spv_vmt == Catch::Approx(2.0));  // origin->depot is 2 miles
}

TEST_CASE("validator accepts a consistent hand-built solution") {
  Instance inst = detour_instance();
  inst.pdos.push_back({0, 2, 0.0, 600.0, 1});
  Solution sol;
  sol.spv_plans[1] = make_spv_plan(inst, inst.spvs[0], {1, 2, 3}, {0});
  sol.cost_breakdown = total_objective(inst, sol);
  const auto rep = validate_solution(inst, sol);
  INFO(rep.summary());
  CHECK(rep.ok());
}

TEST_CASE("validator flags duplicate service") {
  Instance inst = detour_instance();
  inst.pdos.push_back({0, 2, 0.0, 600.0, 1});
  Solution sol;
  sol.spv_plans[1] = make_spv_plan(inst, inst.spvs[0], {1, 2, 3}, {0});
  sol.dv_plans.push_back(make_dv_plan(inst, {1, 2, 1}, {0}));
  sol.cost_breakdown = total_objective(inst, sol);
  const auto rep = validate_solution(inst, sol);
  REQUIRE_FALSE(rep.ok());
  bool found = false;
  for (const auto& v : rep.violations) found |= (v.code == "duplicate-service");
  CHECK(found);
}

TEST_CASE("validator flags arrival after the driver deadline") {
  Instance inst = detour_instance();
  inst.pdos.push_back({0, 2, 0.0, 600.0, 1});
  inst.spvs[0].latest_arrival = 15.0;  // route needs ~21.5 minutes
  Solution sol;
  sol.spv_plans[1] = make_spv_plan(inst, inst.spvs[0], {1, 2, 3}, {0});
  sol.cost_breakdown = total_objective(inst, sol);
  const auto rep = validate_solution(inst, sol);
  REQUIRE_FALSE(rep.ok());
  bool found = false;
  for (const auto& v : rep.violations) found |= (v.code == "latest-arrival");
  CHECK(found);
}

TEST_CASE("validator flags unserved orders and inconsistent travel times") {
  Instance inst = detour_instance();
  inst.pdos.push_back({0, 2, 0.0, 600.0, 1});
  Solution sol;
  sol.cost_breakdown = total_objective(inst, sol);
  {
    const auto rep = validate_solution(inst, sol);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.violations[0].code == "unserved");
  }
  sol.spv_plans[1] = make_spv_plan(inst, inst.spvs[0], {1, 2, 3}, {0});
  sol.spv_plans[1].stop_times[3] = sol.spv_plans[1].stop_times[2];  // teleport
  {
    const auto rep = validate_solution(inst, sol);
    REQUIRE_FALSE(rep.ok());
    bool found = false;
    for (const auto& v : rep.violations) found |= (v.code == "time-consistency");
    CHECK(found);
  }
}

TEST_CASE("instance validation enforces field invariants") {
  Instance inst = basic_instance(line_network(3), 0);
  inst.validate();
  {
    Instance bad = inst;
    bad.depot = 77;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  }
  {
    Instance bad = inst;
    bad.pdos.push_back({0, 1, 100.0, 50.0, 1});
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  }
  {
    Instance bad = inst;
    bad.spvs.push_back({0, 0, 2, 0.0, 100.0, 9, 10.0});
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  }
  {
    Instance bad = inst;
    bad.pdos.push_back({3, 1, 0.0, 50.0, 1});
    bad.pdos.push_back({3, 2, 0.0, 50.0, 1});
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  }
}
