#include <catch2/catch_amalgamated.hpp>

#include "ctd/dv_routing.hpp"
#include "helpers.hpp"

using namespace ctd;
using namespace ctd::testutil;

namespace {

CostModel flat_rates() {
  CostModel m;
  m.dv_rate_per_mile = 1.0;
  m.spv_rate_per_mile = 1.0;
  return m;
}

double mvrp_total(const DistCache& cache, const Instance& inst, const std::vector<DvRoute>& routes) {
  double c = inst.dv_spec.fixed_cost * static_cast<double>(routes.size());
  for (const auto& r : routes) c += dv_route_cost(cache, r);
  return c;
}

// Optimal multi-route cost by enumerating every partition into ordered tours.
double brute_force_mvrp(const DistCache& cache, const Instance& inst, std::vector<PdoId> pdos) {
  std::sort(pdos.begin(), pdos.end());
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::vector<PdoId>> groups;
  auto tour_cost = [&](const std::vector<PdoId>& group) {
    std::vector<NodeId> stops;
    for (PdoId pid : group) {
      const NodeId n = inst.pdo(pid).drop_node;
      if (std::find(stops.begin(), stops.end(), n) == stops.end()) stops.push_back(n);
    }
    if (static_cast<int>(stops.size()) > inst.dv_spec.max_stops)
      return std::numeric_limits<double>::infinity();
    std::sort(stops.begin(), stops.end());
    double bc = std::numeric_limits<double>::infinity();
    do {
      std::vector<NodeId> full = {inst.depot};
      full.insert(full.end(), stops.begin(), stops.end());
      full.push_back(inst.depot);
      if (!detail::dv_schedule(cache, inst, full, group).feasible) continue;
      double c = 0.0;
      for (std::size_t i = 0; i + 1 < full.size(); ++i)
        c += cache.cost(VehicleClass::Dv, full[i], full[i + 1]);
      bc = std::min(bc, c);
    } while (std::next_permutation(stops.begin(), stops.end()));
    return bc;
  };
  auto walk = [&](auto&& self, std::size_t i) -> void {
    if (i == pdos.size()) {
      double c = inst.dv_spec.fixed_cost * static_cast<double>(groups.size());
      for (const auto& g : groups) c += tour_cost(g);
      best = std::min(best, c);
      return;
    }
    for (auto& g : groups) {
      g.push_back(pdos[i]);
      self(self, i + 1);
      g.pop_back();
    }
    groups.push_back({pdos[i]});
    self(self, i + 1);
    groups.pop_back();
  };
  walk(walk, 0);
  return best;
}

}  // namespace

TEST_CASE("marginal insertion cost follows the two-leg detour formula") {
  // c(0,1)=3, c(1,2)=4, c(0,2)=5 at $1/mile
  std::vector<Arc> arcs;
  add_edge(arcs, 0, 1, 3.0);
  add_edge(arcs, 1, 2, 4.0);
  add_edge(arcs, 0, 2, 5.0);
  add_edge(arcs, 9, 0, 10.0);  // long approach legs so the depot never shortcuts the triangle
  add_edge(arcs, 2, 9, 10.0);
  Network net({9, 0, 1, 2}, arcs);
  DistCache cache(net, flat_rates());
  DvRoute route;
  route.stops = {9, 0, 2, 9};
  CHECK(marginal_insertion_cost(cache, route, 0, 2, 1) == Catch::Approx(2.0));
  CHECK_THROWS_AS(marginal_insertion_cost(cache, route, 0, 9, 1), std::invalid_argument);
}

TEST_CASE("inserting a node already on the shortest leg is free") {
  Network net = line_network(3);
  DistCache cache(net, flat_rates());
  DvRoute route;
  route.stops = {0, 2, 0};
  CHECK(marginal_insertion_cost(cache, route, 0, 2, 1) == Catch::Approx(0.0));
}

TEST_CASE("marginal cost equals the route-cost delta after the actual insertion") {
  detail::Rng rng(11);
  Network net = grid_network(4, 4, 0.7);
  DistCache cache(net, flat_rates());
  for (int trial = 0; trial < 20; ++trial) {
    DvRoute route;
    route.stops = {0, rng.uniform_int(1, 15), rng.uniform_int(1, 15), 0};
    if (route.stops[1] == route.stops[2]) continue;
    NodeId u = rng.uniform_int(1, 15);
    if (route.visits(u)) continue;
    const std::size_t link = static_cast<std::size_t>(rng.uniform_int(0, 2));
    const double mc =
        marginal_insertion_cost(cache, route, route.stops[link], route.stops[link + 1], u);
    DvRoute after = route;
    after.stops.insert(after.stops.begin() + static_cast<std::ptrdiff_t>(link) + 1, u);
    CHECK(dv_route_cost(cache, after) - dv_route_cost(cache, route) == Catch::Approx(mc).margin(1e-9));
  }
}

TEST_CASE("single estimation route over nothing is the degenerate depot loop") {
  Instance inst = basic_instance(line_network(4), 0);
  DistCache cache(inst.network, inst.params.cost_model);
  auto r = build_single_route(cache, inst, {});
  CHECK(r.degenerate());
  CHECK(dv_route_cost(cache, r) == 0.0);
}

TEST_CASE("single estimation route for one order is the round trip") {
  Instance inst = basic_instance(line_network(4), 0);
  inst.params.cost_model = flat_rates();
  inst.pdos.push_back({0, 2, 0.0, 600.0, 1});
  DistCache cache(inst.network, inst.params.cost_model);
  auto r = build_single_route(cache, inst, {0});
  CHECK(r.stops == std::vector<NodeId>{0, 2, 0});
  CHECK(dv_route_cost(cache, r) == Catch::Approx(4.0));
}

TEST_CASE("single estimation route beats a nearest-neighbor construction") {
  detail::Rng rng(900);
  for (int trial = 0; trial < 8; ++trial) {
    Instance inst = basic_instance(grid_network(4, 4, 0.6), 0);
    inst.params.cost_model = flat_rates();
    std::vector<PdoId> ids;
    for (int i = 0; i < 4; ++i) {
      inst.pdos.push_back({i, rng.uniform_int(1, 15), 0.0, 600.0, 1});
      ids.push_back(i);
    }
    DistCache cache(inst.network, inst.params.cost_model);
    auto r = build_single_route(cache, inst, ids);

    // nearest-neighbor tour over the same drop set
    std::vector<NodeId> left;
    for (const auto& p : inst.pdos)
      if (std::find(left.begin(), left.end(), p.drop_node) == left.end())
        left.push_back(p.drop_node);
    double nn_cost = 0.0;
    NodeId at = 0;
    while (!left.empty()) {
      auto next = std::min_element(left.begin(), left.end(), [&](NodeId a, NodeId b) {
        const double ca = cache.cost(VehicleClass::Dv, at, a);
        const double cb = cache.cost(VehicleClass::Dv, at, b);
        return ca < cb || (ca == cb && a < b);
      });
      nn_cost += cache.cost(VehicleClass::Dv, at, *next);
      at = *next;
      left.erase(next);
    }
    nn_cost += cache.cost(VehicleClass::Dv, at, 0);
    CHECK(dv_route_cost(cache, r) <= nn_cost + 1e-9);
  }
}

TEST_CASE("an order undeliverable even alone is reported with its id") {
  Instance inst = basic_instance(line_network(5), 0);
  inst.pdos.push_back({7, 4, 0.0, 1.0, 1});  // deadline before any vehicle can arrive
  DistCache cache(inst.network, inst.params.cost_model);
  try {
    build_single_route(cache, inst, {7});
    FAIL("expected infeasibility");
  } catch (const InfeasiblePdoError& e) {
    CHECK(e.culprits == std::vector<PdoId>{7});
  }
  CHECK_THROWS_AS(insertion_mvrp(cache, inst, {7}), InfeasiblePdoError);
}

TEST_CASE("multi-vehicle insertion groups a line of orders into one optimal tour") {
  Instance inst = basic_instance(line_network(4), 2);  // depot between the drops
  inst.params.cost_model = flat_rates();
  inst.pdos.push_back({0, 0, 0.0, 600.0, 1});
  inst.pdos.push_back({1, 1, 0.0, 600.0, 1});
  inst.pdos.push_back({2, 3, 0.0, 600.0, 1});
  DistCache cache(inst.network, inst.params.cost_model);
  auto routes = insertion_mvrp(cache, inst, {0, 1, 2});
  REQUIRE(routes.size() == 1);
  CHECK(mvrp_total(cache, inst, routes) == Catch::Approx(brute_force_mvrp(cache, inst, {0, 1, 2})));
  CHECK(routes[0].served_pdos == std::vector<PdoId>{0, 1, 2});
}

TEST_CASE("a one-stop cap forces one route per distinct location") {
  Instance inst = basic_instance(line_network(5), 0);
  inst.dv_spec.max_stops = 1;
  for (int i = 0; i < 3; ++i) inst.pdos.push_back({i, i + 1, 0.0, 600.0, 1});
  DistCache cache(inst.network, inst.params.cost_model);
  auto routes = insertion_mvrp(cache, inst, {0, 1, 2});
  CHECK(routes.size() == 3);
  for (const auto& r : routes) CHECK(r.load() == 1);
}

TEST_CASE("multi-vehicle insertion of nothing is an empty plan set") {
  Instance inst = basic_instance(line_network(3), 0);
  DistCache cache(inst.network, inst.params.cost_model);
  CHECK(insertion_mvrp(cache, inst, {}).empty());
}

TEST_CASE("orders at one location share a stop and bypass the cap") {
  Instance inst = basic_instance(line_network(4), 0);
  inst.dv_spec.max_stops = 1;
  for (int i = 0; i < 3; ++i) inst.pdos.push_back({i, 2, 0.0, 600.0, 1});
  DistCache cache(inst.network, inst.params.cost_model);
  auto routes = insertion_mvrp(cache, inst, {0, 1, 2});
  REQUIRE(routes.size() == 1);
  CHECK(routes[0].served_pdos.size() == 3);
  CHECK(routes[0].load() == 1);
}

TEST_CASE("mvrp output passes the solution validator") {
  detail::Rng rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    Instance inst = basic_instance(grid_network(4, 4, 0.5), 0);
    inst.dv_spec.max_stops = 3;
    std::vector<PdoId> ids;
    const int n = static_cast<int>(rng.uniform_int(1, 8));
    for (int i = 0; i < n; ++i) {
      inst.pdos.push_back({i, rng.uniform_int(1, 15), 0.0, 600.0, 1});
      ids.push_back(i);
    }
    DistCache cache(inst.network, inst.params.cost_model);
    auto routes = insertion_mvrp(cache, inst, ids);

    std::size_t distinct = 0;
    {
      std::set<NodeId> nodes;
      for (const auto& p : inst.pdos) nodes.insert(p.drop_node);
      distinct = nodes.size();
    }
    CHECK(routes.size() >=
          (distinct + static_cast<std::size_t>(inst.dv_spec.max_stops) - 1) /
              static_cast<std::size_t>(inst.dv_spec.max_stops));

    Solution sol;
    for (const auto& r : routes) sol.dv_plans.push_back({r.stops, r.served_pdos, r.stop_times});
    sol.cost_breakdown = total_objective(cache, inst, sol);
    const auto rep = validate_solution(cache, inst, sol);
    INFO(rep.summary());
    CHECK(rep.ok());
  }
}

TEST_CASE("adding an order never cheapens the fleet on a metric network") {
  detail::Rng rng(444);
  Instance inst = basic_instance(grid_network(4, 4, 0.5), 0);
  DistCache cache(inst.network, inst.params.cost_model);
  for (int i = 0; i < 6; ++i) inst.pdos.push_back({i, rng.uniform_int(1, 15), 0.0, 600.0, 1});
  std::vector<PdoId> ids;
  double prev = 0.0;
  for (int i = 0; i < 6; ++i) {
    ids.push_back(i);
    auto routes = insertion_mvrp(cache, inst, ids);
    double var = 0.0;
    for (const auto& r : routes) var += dv_route_cost(cache, r);
    CHECK(var >= prev - 1e-9);
    prev = var;
  }
}
