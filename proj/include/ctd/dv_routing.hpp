#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctd/instance.hpp"

namespace ctd {

struct InfeasiblePdoError : std::runtime_error {
  std::vector<PdoId> culprits;
  InfeasiblePdoError(const std::string& msg, std::vector<PdoId> who)
      : std::runtime_error(msg), culprits(std::move(who)) {}
};

// A dedicated-vehicle tour: depot, distinct delivery stops, depot.
struct DvRoute {
  std::vector<NodeId> stops = {0, 0};
  std::vector<PdoId> served_pdos;  // sorted
  std::vector<double> stop_times;  // aligned with stops

  int load() const { return static_cast<int>(stops.size()) - 2; }
  bool degenerate() const { return stops.size() <= 2; }

  bool visits(NodeId n) const {
    for (std::size_t i = 1; i + 1 < stops.size(); ++i)
      if (stops[i] == n) return true;
    return false;
  }
};

inline double dv_route_cost(const DistCache& cache, const DvRoute& r) {
  double c = 0.0;
  for (std::size_t i = 0; i + 1 < r.stops.size(); ++i) {
    if (r.stops[i] == r.stops[i + 1]) continue;
    c += cache.cost(VehicleClass::Dv, r.stops[i], r.stops[i + 1]);
  }
  return c;
}

// Cost increase of visiting u between consecutive stops i and j.
inline double marginal_insertion_cost(const DistCache& cache, const DvRoute& route, NodeId i,
                                      NodeId j, NodeId u) {
  bool adjacent = false;
  for (std::size_t s = 0; s + 1 < route.stops.size(); ++s)
    if (route.stops[s] == i && route.stops[s + 1] == j) adjacent = true;
  if (!adjacent)
    throw std::invalid_argument("nodes " + std::to_string(i) + "," + std::to_string(j) +
                                " are not consecutive stops");
  const double away = (i == u) ? 0.0 : cache.cost(VehicleClass::Dv, i, u);
  const double back = (u == j) ? 0.0 : cache.cost(VehicleClass::Dv, u, j);
  const double direct = (i == j) ? 0.0 : cache.cost(VehicleClass::Dv, i, j);
  return away + back - direct;
}

namespace detail {

// Eq-style insertion delta without the adjacency validation of the public
// operation; loops below only ever pass genuinely consecutive stops.
inline double insertion_delta(const DistCache& cache, NodeId i, NodeId j, NodeId u) {
  const double away = (i == u) ? 0.0 : cache.cost(VehicleClass::Dv, i, u);
  const double back = (u == j) ? 0.0 : cache.cost(VehicleClass::Dv, u, j);
  const double direct = (i == j) ? 0.0 : cache.cost(VehicleClass::Dv, i, j);
  return away + back - direct;
}

// Departure at the latest earliest-pickup among the orders; arrivals follow
// leg travel times with no per-stop service. Feasible when every order is
// dropped by its deadline.
struct DvSchedule {
  std::vector<double> times;
  bool feasible = true;
};

inline DvSchedule dv_schedule(const DistCache& cache, const Instance& inst,
                              const std::vector<NodeId>& stops, const std::vector<PdoId>& pdos) {
  DvSchedule s;
  double t = 0.0;
  for (PdoId pid : pdos) t = std::max(t, inst.pdo(pid).earliest_pickup);
  s.times.push_back(t);
  for (std::size_t i = 0; i + 1 < stops.size(); ++i) {
    if (stops[i] != stops[i + 1]) {
      const double leg = cache.time_minutes(VehicleClass::Dv, stops[i], stops[i + 1]);
      if (!(leg < SpTree::kInf)) {
        s.feasible = false;
        return s;
      }
      t += leg;
    }
    s.times.push_back(t);
  }
  for (PdoId pid : pdos) {
    const Pdo& p = inst.pdo(pid);
    for (std::size_t i = 1; i + 1 < stops.size(); ++i)
      if (stops[i] == p.drop_node && s.times[i] > p.latest_delivery + kBudgetSlack)
        s.feasible = false;
  }
  return s;
}

// An order no vehicle could ever deliver on its own.
inline bool dv_deliverable_alone(const DistCache& cache, const Instance& inst, const Pdo& p) {
  if (!cache.reachable(inst.depot, p.drop_node) || !cache.reachable(p.drop_node, inst.depot))
    return false;
  const double arrival = p.earliest_pickup + cache.time_minutes(VehicleClass::Dv, inst.depot, p.drop_node);
  return arrival <= p.latest_delivery + kBudgetSlack;
}

inline std::vector<PdoId> undeliverable_pdos(const DistCache& cache, const Instance& inst,
                                             const std::vector<PdoId>& pdos) {
  std::vector<PdoId> bad;
  for (PdoId pid : pdos)
    if (!dv_deliverable_alone(cache, inst, inst.pdo(pid))) bad.push_back(pid);
  return bad;
}

inline void refresh_schedule(const DistCache& cache, const Instance& inst, DvRoute& r) {
  r.stop_times = dv_schedule(cache, inst, r.stops, r.served_pdos).times;
}

}  // namespace detail

// Single estimation tour over all given orders, cheapest insertion, no stop
// cap. When no deadline-respecting insertion exists for a remaining order the
// cheapest one is taken anyway; the tour is a cost baseline, the final plans
// are rebuilt with full checks by insertion_mvrp.
inline DvRoute build_single_route(const DistCache& cache, const Instance& inst,
                                  const std::vector<PdoId>& pdos) {
  const auto bad = detail::undeliverable_pdos(cache, inst, pdos);
  if (!bad.empty())
    throw InfeasiblePdoError("orders undeliverable even alone: " + std::to_string(bad.front()),
                             bad);

  DvRoute r;
  r.stops = {inst.depot, inst.depot};
  std::vector<PdoId> todo = pdos;
  std::sort(todo.begin(), todo.end());
  constexpr std::size_t kAttach = static_cast<std::size_t>(-1);
  while (!todo.empty()) {
    PdoId best_pdo = todo.front();
    std::size_t best_link = kAttach;
    double best_cost = std::numeric_limits<double>::infinity();
    bool best_feasible = false;
    bool found = false;
    // deadline-respecting insertions take priority, then marginal cost;
    // scan order (order id, link) settles ties
    auto better = [&](bool ok, double mc) {
      if (!found) return true;
      if (ok != best_feasible) return ok;
      return mc < best_cost - 1e-12;
    };
    for (PdoId pid : todo) {
      const NodeId node = inst.pdo(pid).drop_node;
      std::vector<PdoId> with = r.served_pdos;
      with.push_back(pid);
      if (r.visits(node)) {
        // share the existing stop at zero marginal cost
        const bool ok = detail::dv_schedule(cache, inst, r.stops, with).feasible;
        if (better(ok, 0.0)) {
          best_pdo = pid;
          best_link = kAttach;
          best_cost = 0.0;
          best_feasible = ok;
          found = true;
        }
        continue;
      }
      for (std::size_t link = 0; link + 1 < r.stops.size(); ++link) {
        const double mc = detail::insertion_delta(cache, r.stops[link], r.stops[link + 1], node);
        std::vector<NodeId> stops = r.stops;
        stops.insert(stops.begin() + static_cast<std::ptrdiff_t>(link) + 1, node);
        const bool ok = detail::dv_schedule(cache, inst, stops, with).feasible;
        if (better(ok, mc)) {
          best_pdo = pid;
          best_link = link;
          best_cost = mc;
          best_feasible = ok;
          found = true;
        }
      }
    }
    const NodeId node = inst.pdo(best_pdo).drop_node;
    if (best_link != kAttach)
      r.stops.insert(r.stops.begin() + static_cast<std::ptrdiff_t>(best_link) + 1, node);
    r.served_pdos.push_back(best_pdo);
    std::sort(r.served_pdos.begin(), r.served_pdos.end());
    todo.erase(std::find(todo.begin(), todo.end(), best_pdo));
  }
  detail::refresh_schedule(cache, inst, r);
  return r;
}

inline DvRoute build_single_route(const Instance& inst, const std::vector<PdoId>& pdos) {
  DistCache cache(inst.network, inst.params.cost_model);
  return build_single_route(cache, inst, pdos);
}

// Multi-vehicle insertion: repeatedly apply the globally cheapest
// deadline-respecting insertion, with an empty tour always on offer so a new
// vehicle opens whenever nothing else fits. Stop caps are enforced.
inline std::vector<DvRoute> insertion_mvrp(const DistCache& cache, const Instance& inst,
                                           const std::vector<PdoId>& pdos) {
  const auto bad = detail::undeliverable_pdos(cache, inst, pdos);
  if (!bad.empty())
    throw InfeasiblePdoError("orders undeliverable even alone: " + std::to_string(bad.front()),
                             bad);

  std::vector<DvRoute> routes;
  routes.push_back({{inst.depot, inst.depot}, {}, {}});  // the empty tour
  std::vector<PdoId> todo = pdos;
  std::sort(todo.begin(), todo.end());

  while (!todo.empty()) {
    PdoId best_pdo = 0;
    std::size_t best_route = 0, best_link = 0;
    bool best_attach = false;
    bool found = false;
    double best_cost = std::numeric_limits<double>::infinity();
    for (PdoId pid : todo) {
      const NodeId node = inst.pdo(pid).drop_node;
      for (std::size_t ri = 0; ri < routes.size(); ++ri) {
        DvRoute& r = routes[ri];
        if (r.visits(node)) {
          std::vector<PdoId> with = r.served_pdos;
          with.push_back(pid);
          if (detail::dv_schedule(cache, inst, r.stops, with).feasible &&
              (!found || 0.0 < best_cost - 1e-12)) {
            best_pdo = pid;
            best_route = ri;
            best_attach = true;
            best_cost = 0.0;
            found = true;
          }
          continue;
        }
        if (r.load() + 1 > inst.dv_spec.max_stops) continue;
        for (std::size_t link = 0; link + 1 < r.stops.size(); ++link) {
          const double mc = detail::insertion_delta(cache, r.stops[link], r.stops[link + 1], node);
          if (mc >= best_cost - 1e-12) continue;
          std::vector<NodeId> stops = r.stops;
          stops.insert(stops.begin() + static_cast<std::ptrdiff_t>(link) + 1, node);
          std::vector<PdoId> with = r.served_pdos;
          with.push_back(pid);
          if (!detail::dv_schedule(cache, inst, stops, with).feasible) continue;
          best_pdo = pid;
          best_route = ri;
          best_link = link;
          best_attach = false;
          best_cost = mc;
          found = true;
        }
      }
    }
    if (!found) throw InfeasiblePdoError("no deadline-respecting insertion found", todo);

    DvRoute& r = routes[best_route];
    if (!best_attach)
      r.stops.insert(r.stops.begin() + static_cast<std::ptrdiff_t>(best_link) + 1,
                     inst.pdo(best_pdo).drop_node);
    r.served_pdos.push_back(best_pdo);
    std::sort(r.served_pdos.begin(), r.served_pdos.end());
    todo.erase(std::find(todo.begin(), todo.end(), best_pdo));
    if (best_route + 1 == routes.size())
      routes.push_back({{inst.depot, inst.depot}, {}, {}});  // keep an empty tour available
  }
  routes.pop_back();
  for (auto& r : routes) detail::refresh_schedule(cache, inst, r);
  return routes;
}

inline std::vector<DvRoute> insertion_mvrp(const Instance& inst, const std::vector<PdoId>& pdos) {
  DistCache cache(inst.network, inst.params.cost_model);
  return insertion_mvrp(cache, inst, pdos);
}

}  // namespace ctd
