#pragma once

#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ctd/graph.hpp"

namespace ctd {

using PdoId = int;
using SpvId = int;

inline constexpr double kMoneyTol = 1e-6;
inline constexpr double kTimeTol = 1e-6;
// strict slack used inside solvers, tighter than the validator tolerances
inline constexpr double kBudgetSlack = 1e-9;

// Package delivery order. Times are minutes of day.
struct Pdo {
  PdoId id = 0;
  NodeId drop_node = 0;
  double earliest_pickup = 0.0;
  double latest_delivery = 0.0;
  int quantity = 1;  // reporting only; capacity is counted in stops

  bool operator==(const Pdo&) const = default;
};

// Shared personal vehicle: a private trip that may detour through the depot.
struct Spv {
  SpvId id = 0;
  NodeId origin = 0;
  NodeId destination = 0;
  double earliest_start = 0.0;
  double latest_arrival = 0.0;
  int max_stops = 1;                    // max PDOs the driver will carry (1..4)
  double detour_willingness_min = 0.0;  // extra minutes tolerated beyond the direct trip

  bool operator==(const Spv&) const = default;
};

struct DvSpec {
  int max_stops = 60;
  double fixed_cost = 120.0;
  long long fleet_limit = -1;  // -1 = unbounded

  bool operator==(const DvSpec&) const = default;
};

struct CostParams {
  double per_pdo_compensation = 1.5;
  double service_time_min = 10.0;  // depot pickup/drop-off handling, charged once per SPV trip
  CostModel cost_model;

  double spv_detour_rate() const { return cost_model.spv_rate_per_mile; }
  double dv_variable_rate() const { return cost_model.dv_rate_per_mile; }

  bool operator==(const CostParams&) const = default;
};

struct Instance {
  Network network;
  NodeId depot = 0;
  std::vector<Pdo> pdos;
  std::vector<Spv> spvs;
  DvSpec dv_spec;
  CostParams params;
  bool spv_origins_at_depot = false;  // drivers start at the depot, no access leg

  const Pdo& pdo(PdoId id) const {
    for (const auto& p : pdos)
      if (p.id == id) return p;
    throw std::out_of_range("unknown pdo id " + std::to_string(id));
  }
  const Spv& spv(SpvId id) const {
    for (const auto& s : spvs)
      if (s.id == id) return s;
    throw std::out_of_range("unknown spv id " + std::to_string(id));
  }

  void validate() const {
    params.cost_model.validate();
    if (!network.has_node(depot)) throw std::invalid_argument("depot is not a network node");
    if (params.per_pdo_compensation < 0 || params.service_time_min < 0)
      throw std::invalid_argument("cost parameters must be non-negative");
    if (dv_spec.max_stops < 1) throw std::invalid_argument("dv max_stops must be >= 1");
    if (dv_spec.fixed_cost < 0) throw std::invalid_argument("dv fixed_cost must be >= 0");
    std::set<PdoId> pids;
    for (const auto& p : pdos) {
      if (!pids.insert(p.id).second)
        throw std::invalid_argument("duplicate pdo id " + std::to_string(p.id));
      if (!network.has_node(p.drop_node))
        throw std::invalid_argument("pdo " + std::to_string(p.id) + " drop node not in network");
      if (!(p.earliest_pickup < p.latest_delivery))
        throw std::invalid_argument("pdo " + std::to_string(p.id) + " has empty time window");
      if (p.quantity < 1)
        throw std::invalid_argument("pdo " + std::to_string(p.id) + " quantity must be >= 1");
    }
    std::set<SpvId> sids;
    for (const auto& s : spvs) {
      if (!sids.insert(s.id).second)
        throw std::invalid_argument("duplicate spv id " + std::to_string(s.id));
      if (!network.has_node(s.origin) || !network.has_node(s.destination))
        throw std::invalid_argument("spv " + std::to_string(s.id) + " endpoint not in network");
      if (!(s.earliest_start < s.latest_arrival))
        throw std::invalid_argument("spv " + std::to_string(s.id) + " has empty time window");
      if (s.max_stops < 1 || s.max_stops > 4)
        throw std::invalid_argument("spv " + std::to_string(s.id) + " max_stops outside 1..4");
      if (s.detour_willingness_min < 0)
        throw std::invalid_argument("spv " + std::to_string(s.id) + " negative detour willingness");
    }
  }
};

// One active SPV's delivery plan. route runs depot -> ... -> destination over
// actual network nodes; stop_times[n] is the arrival minute at n (at the
// depot: the pickup minute, before the service time is spent).
struct SpvPlan {
  std::vector<NodeId> route;
  std::vector<PdoId> served_pdos;  // sorted
  std::map<NodeId, double> stop_times;
};

// Dedicated vehicle plan. stops holds delivery locations bracketed by the
// depot on both ends; stop_times aligns with stops.
struct DvPlan {
  std::vector<NodeId> stops;
  std::vector<PdoId> served_pdos;  // sorted
  std::vector<double> stop_times;
};

struct CostBreakdown {
  double spv_detour_cost = 0.0;
  double spv_pdo_compensation = 0.0;
  double dv_variable_cost = 0.0;
  double dv_fixed_cost = 0.0;
  double total = 0.0;
  double spv_vmt = 0.0;
  double dv_vmt = 0.0;
};

struct Solution {
  std::map<SpvId, SpvPlan> spv_plans;  // only SPVs that deliver something
  std::vector<DvPlan> dv_plans;
  CostBreakdown cost_breakdown;

  std::size_t pdos_by_spv() const {
    std::size_t n = 0;
    for (const auto& [k, p] : spv_plans) n += p.served_pdos.size();
    return n;
  }
  std::size_t pdos_by_dv() const {
    std::size_t n = 0;
    for (const auto& p : dv_plans) n += p.served_pdos.size();
    return n;
  }
};

struct LegMetrics {
  double time_min = 0.0;
  double cost_dollars = 0.0;
  double miles = 0.0;
};

// Exact per-arc accumulation along a driven node sequence. Consecutive nodes
// are expected to be arc-adjacent; a non-adjacent pair is expanded through
// the shortest path between them.
inline LegMetrics route_metrics(const DistCache& cache, VehicleClass cls,
                                const std::vector<NodeId>& nodes) {
  const Network& net = cache.network();
  const CostModel& model = cache.cost_model();
  LegMetrics m;
  auto add_arc = [&](std::size_t ai) {
    const ArcMetrics am = arc_metrics(net, ai, model, cls);
    m.time_min += am.travel_time_min;
    m.cost_dollars += am.cost_dollars;
    m.miles += net.arc(ai).length_miles;
  };
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (nodes[i] == nodes[i + 1]) continue;
    const std::size_t ai = net.arc_between(nodes[i], nodes[i + 1]);
    if (ai != Network::npos) {
      add_arc(ai);
    } else {
      const auto leg = cache.path(nodes[i], nodes[i + 1]);
      for (std::size_t j = 0; j + 1 < leg.size(); ++j) add_arc(net.arc_between(leg[j], leg[j + 1]));
    }
  }
  return m;
}

// Access-leg metrics origin -> depot for an SPV; zero when drivers start at
// the depot.
inline LegMetrics spv_access_leg(const DistCache& cache, const Instance& inst, const Spv& s) {
  if (inst.spv_origins_at_depot || s.origin == inst.depot) return {};
  return route_metrics(cache, VehicleClass::Spv, cache.path(s.origin, inst.depot));
}

// Driver compensation for the detour: access leg + delivery route minus the
// direct origin->destination trip the driver would have made anyway.
inline double spv_detour_cost(const DistCache& cache, const Instance& inst, const Spv& s,
                              const std::vector<NodeId>& route) {
  if (route.empty() || route.front() != inst.depot || route.back() != s.destination)
    throw std::invalid_argument("spv route must run depot -> destination");
  const NodeId base_origin = inst.spv_origins_at_depot ? inst.depot : s.origin;
  const double c0s = spv_access_leg(cache, inst, s).cost_dollars;
  const double route_cost = route_metrics(cache, VehicleClass::Spv, route).cost_dollars;
  double cs = 0.0;
  if (base_origin != s.destination)
    cs = route_metrics(cache, VehicleClass::Spv, cache.path(base_origin, s.destination)).cost_dollars;
  return c0s + route_cost - cs;
}

inline double spv_detour_cost(const Instance& inst, const Spv& s, const std::vector<NodeId>& route) {
  DistCache cache(inst.network, inst.params.cost_model);
  return spv_detour_cost(cache, inst, s, route);
}

// Depot pickup minute for an SPV serving the given orders: the vehicle
// reaches the depot no earlier than its own start plus the access leg, and
// waits for the latest earliest-pickup among its orders.
inline double spv_pickup_time(const DistCache& cache, const Instance& inst, const Spv& s,
                              const std::vector<PdoId>& served) {
  double t = s.earliest_start + spv_access_leg(cache, inst, s).time_min;
  for (PdoId pid : served) t = std::max(t, inst.pdo(pid).earliest_pickup);
  return t;
}

inline CostBreakdown total_objective(const DistCache& cache, const Instance& inst,
                                     const Solution& sol) {
  CostBreakdown b;
  for (const auto& [sid, plan] : sol.spv_plans) {
    const Spv& s = inst.spv(sid);
    b.spv_detour_cost += spv_detour_cost(cache, inst, s, plan.route);
    b.spv_pdo_compensation +=
        inst.params.per_pdo_compensation * static_cast<double>(plan.served_pdos.size());
    b.spv_vmt += spv_access_leg(cache, inst, s).miles +
                 route_metrics(cache, VehicleClass::Spv, plan.route).miles;
  }
  for (const auto& plan : sol.dv_plans) {
    for (std::size_t i = 0; i + 1 < plan.stops.size(); ++i) {
      if (plan.stops[i] == plan.stops[i + 1]) continue;
      b.dv_variable_cost += cache.cost(VehicleClass::Dv, plan.stops[i], plan.stops[i + 1]);
      b.dv_vmt += cache.miles(plan.stops[i], plan.stops[i + 1]);
    }
    b.dv_fixed_cost += inst.dv_spec.fixed_cost;
  }
  b.total = b.spv_detour_cost + b.spv_pdo_compensation + b.dv_variable_cost + b.dv_fixed_cost;
  return b;
}

inline CostBreakdown total_objective(const Instance& inst, const Solution& sol) {
  DistCache cache(inst.network, inst.params.cost_model);
  return total_objective(cache, inst, sol);
}

struct Violation {
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const {
    std::ostringstream os;
    for (const auto& v : violations) os << "[" << v.code << "] " << v.message << "\n";
    return os.str();
  }
};

// Full feasibility check of a solution against the instance: unique service,
// route endpoints, stop caps, time windows, and travel-time consistency.
// Structural problems are reported as violations, never thrown.
inline ValidationReport validate_solution(const DistCache& cache, const Instance& inst,
                                          const Solution& sol) {
  ValidationReport rep;
  auto flag = [&](const std::string& code, const std::string& msg) {
    rep.violations.push_back({code, msg});
  };

  std::map<PdoId, int> served_count;
  for (const auto& p : inst.pdos) served_count[p.id] = 0;
  auto tally = [&](PdoId pid, const std::string& where) {
    auto it = served_count.find(pid);
    if (it == served_count.end())
      flag("unknown-pdo", where + " serves pdo " + std::to_string(pid) + " not in instance");
    else
      ++it->second;
  };

  auto leg_time = [&](VehicleClass cls, NodeId a, NodeId b) -> double {
    const std::size_t ai = cache.network().arc_between(a, b);
    if (ai != Network::npos) return arc_metrics(cache.network(), ai, cache.cost_model(), cls).travel_time_min;
    return cache.time_minutes(cls, a, b);  // +inf when disconnected
  };

  for (const auto& [sid, plan] : sol.spv_plans) {
    const std::string who = "spv " + std::to_string(sid);
    const Spv* s = nullptr;
    try {
      s = &inst.spv(sid);
    } catch (const std::out_of_range&) {
      flag("unknown-spv", who + " not in instance");
      continue;
    }
    for (PdoId pid : plan.served_pdos) tally(pid, who);
    if (plan.served_pdos.empty()) {
      flag("inactive-plan", who + " has a plan but serves nothing");
      continue;
    }
    if (plan.route.empty() || plan.route.front() != inst.depot || plan.route.back() != s->destination) {
      flag("spv-endpoints", who + " route must run depot -> own destination");
      continue;
    }
    bool nodes_ok = true;
    for (NodeId n : plan.route)
      if (!inst.network.has_node(n)) {
        flag("unknown-node", who + " route visits unknown node " + std::to_string(n));
        nodes_ok = false;
      }
    if (!nodes_ok) continue;
    {
      std::set<NodeId> uniq(plan.route.begin(), plan.route.end());
      if (uniq.size() != plan.route.size()) flag("route-revisit", who + " route revisits a node");
    }
    if (static_cast<int>(plan.served_pdos.size()) > s->max_stops)
      flag("spv-cap", who + " carries " + std::to_string(plan.served_pdos.size()) + " > max " +
                          std::to_string(s->max_stops));
    bool times_ok = true;
    for (NodeId n : plan.route)
      if (!plan.stop_times.count(n)) {
        flag("missing-time", who + " has no stop time for node " + std::to_string(n));
        times_ok = false;
      }
    if (!times_ok) continue;

    const double t0 = plan.stop_times.at(inst.depot);
    const double earliest_at_depot = s->earliest_start + spv_access_leg(cache, inst, *s).time_min;
    if (t0 < earliest_at_depot - kTimeTol)
      flag("early-departure", who + " reaches the depot before its earliest start allows");
    for (PdoId pid : plan.served_pdos) {
      const Pdo* p = nullptr;
      try {
        p = &inst.pdo(pid);
      } catch (const std::out_of_range&) {
        continue;  // already flagged unknown-pdo
      }
      if (t0 < p->earliest_pickup - kTimeTol)
        flag("early-pickup", who + " picks up pdo " + std::to_string(pid) + " before its earliest time");
      auto it = plan.stop_times.find(p->drop_node);
      if (std::find(plan.route.begin(), plan.route.end(), p->drop_node) == plan.route.end() ||
          it == plan.stop_times.end()) {
        flag("drop-off-route", who + " serves pdo " + std::to_string(pid) + " whose drop node is off route");
      } else if (it->second > p->latest_delivery + kTimeTol) {
        flag("latest-delivery", who + " drops pdo " + std::to_string(pid) + " after its deadline");
      }
    }
    if (plan.stop_times.at(s->destination) > s->latest_arrival + kTimeTol)
      flag("latest-arrival", who + " reaches its destination after its latest arrival");
    double prev = t0;
    for (std::size_t i = 0; i + 1 < plan.route.size(); ++i) {
      const double next = plan.stop_times.at(plan.route[i + 1]);
      const double lt = leg_time(VehicleClass::Spv, plan.route[i], plan.route[i + 1]);
      if (!(lt < SpTree::kInf)) {
        flag("disconnected", who + " route leg has no path");
        break;
      }
      const double service = (i == 0) ? inst.params.service_time_min : 0.0;
      if (next < prev + lt + service - kTimeTol)
        flag("time-consistency", who + " arrives at node " + std::to_string(plan.route[i + 1]) +
                                     " faster than travel allows");
      if (next <= prev) flag("time-order", who + " stop times do not strictly increase");
      prev = next;
    }
  }

  for (std::size_t di = 0; di < sol.dv_plans.size(); ++di) {
    const auto& plan = sol.dv_plans[di];
    const std::string who = "dv " + std::to_string(di);
    for (PdoId pid : plan.served_pdos) tally(pid, who);
    if (plan.stops.size() < 3 || plan.stops.front() != inst.depot || plan.stops.back() != inst.depot) {
      flag("dv-endpoints", who + " route must run depot -> stops -> depot");
      continue;
    }
    bool nodes_ok = true;
    for (NodeId n : plan.stops)
      if (!inst.network.has_node(n)) {
        flag("unknown-node", who + " visits unknown node " + std::to_string(n));
        nodes_ok = false;
      }
    if (!nodes_ok) continue;
    std::set<NodeId> interior(plan.stops.begin() + 1, plan.stops.end() - 1);
    if (interior.size() != plan.stops.size() - 2 || interior.count(inst.depot))
      flag("dv-stops", who + " interior stops must be distinct non-depot nodes");
    if (static_cast<int>(interior.size()) > inst.dv_spec.max_stops)
      flag("dv-cap", who + " makes " + std::to_string(interior.size()) + " stops > max " +
                         std::to_string(inst.dv_spec.max_stops));
    if (plan.served_pdos.empty()) flag("inactive-plan", who + " has a route but serves nothing");
    if (plan.stop_times.size() != plan.stops.size()) {
      flag("missing-time", who + " stop_times do not align with stops");
      continue;
    }
    const double t0 = plan.stop_times.front();
    for (PdoId pid : plan.served_pdos) {
      const Pdo* p = nullptr;
      try {
        p = &inst.pdo(pid);
      } catch (const std::out_of_range&) {
        continue;
      }
      if (t0 < p->earliest_pickup - kTimeTol)
        flag("early-pickup", who + " departs before pdo " + std::to_string(pid) + " earliest pickup");
      auto pos = std::find(plan.stops.begin() + 1, plan.stops.end() - 1, p->drop_node);
      if (pos == plan.stops.end() - 1) {
        flag("drop-off-route", who + " serves pdo " + std::to_string(pid) + " whose drop node is off route");
      } else {
        const double td = plan.stop_times[static_cast<std::size_t>(pos - plan.stops.begin())];
        if (td > p->latest_delivery + kTimeTol)
          flag("latest-delivery", who + " drops pdo " + std::to_string(pid) + " after its deadline");
      }
    }
    for (std::size_t i = 0; i + 1 < plan.stops.size(); ++i) {
      const double lt = leg_time(VehicleClass::Dv, plan.stops[i], plan.stops[i + 1]);
      if (!(lt < SpTree::kInf)) {
        flag("disconnected", who + " route leg has no path");
        break;
      }
      if (plan.stop_times[i + 1] < plan.stop_times[i] + lt - kTimeTol)
        flag("time-consistency", who + " arrives at stop " + std::to_string(i + 1) +
                                     " faster than travel allows");
      if (plan.stop_times[i + 1] <= plan.stop_times[i])
        flag("time-order", who + " stop times do not strictly increase");
    }
  }

  for (const auto& [pid, n] : served_count) {
    if (n == 0) flag("unserved", "pdo " + std::to_string(pid) + " is not served by any vehicle");
    if (n > 1)
      flag("duplicate-service", "pdo " + std::to_string(pid) + " is served " + std::to_string(n) + " times");
  }

  const CostBreakdown& b = sol.cost_breakdown;
  const double sum =
      b.spv_detour_cost + b.spv_pdo_compensation + b.dv_variable_cost + b.dv_fixed_cost;
  if (std::abs(sum - b.total) > 1e-9)
    flag("cost-identity", "cost breakdown total differs from the sum of its components");

  return rep;
}

inline ValidationReport validate_solution(const Instance& inst, const Solution& sol) {
  DistCache cache(inst.network, inst.params.cost_model);
  return validate_solution(cache, inst, sol);
}

}  // namespace ctd
