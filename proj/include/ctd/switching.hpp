#pragma once

#include <limits>
#include <map>
#include <vector>

#include "ctd/dv_routing.hpp"
#include "ctd/instance.hpp"
#include "ctd/route_enum.hpp"

namespace ctd {

// One SPV's current assignment inside the solver: a candidate-route index and
// the orders riding on it.
struct SpvWorkingPlan {
  int route_index = 0;
  std::vector<PdoId> served;  // sorted, non-empty while the plan is active
};

// Cheapest route of the list able to carry every order in `served`; the null
// route when nothing is left.
inline std::pair<int, double> best_route_for(const std::vector<CandidateRoute>& routes,
                                             const std::vector<PdoId>& served) {
  if (served.empty()) return {0, 0.0};
  int best = -1;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t ri = 1; ri < routes.size(); ++ri) {
    bool ok = true;
    for (PdoId pid : served)
      if (!routes[ri].can_serve(pid)) {
        ok = false;
        break;
      }
    if (ok && routes[ri].detour_cost < best_cost - 1e-12) {
      best = static_cast<int>(ri);
      best_cost = routes[ri].detour_cost;
    }
  }
  return {best, best < 0 ? std::numeric_limits<double>::infinity() : best_cost};
}

// Marginal cost of an order on its SPV plan: current plan cost minus the best
// plan for the remaining orders, both priced as detour plus per-order
// compensation.
inline double spv_service_cost(const Instance& inst, const std::vector<CandidateRoute>& routes,
                               const SpvWorkingPlan& plan, PdoId pdo) {
  auto it = std::find(plan.served.begin(), plan.served.end(), pdo);
  if (it == plan.served.end())
    throw std::invalid_argument("order " + std::to_string(pdo) + " is not on this plan");
  const double e = inst.params.per_pdo_compensation;
  const double cur =
      routes[static_cast<std::size_t>(plan.route_index)].detour_cost +
      e * static_cast<double>(plan.served.size());
  std::vector<PdoId> rest = plan.served;
  rest.erase(std::find(rest.begin(), rest.end(), pdo));
  const auto [ri, cost] = best_route_for(routes, rest);
  (void)ri;
  return cur - (cost + e * static_cast<double>(rest.size()));
}

struct SwitchCandidate {
  PdoId pdo = 0;
  double spv_cost = 0.0;
  NodeId nearest_dv_stop = 0;
  double insertion_cost = 0.0;
  bool triggers_new_dv = false;
  double saving = -std::numeric_limits<double>::infinity();
  bool improving = false;
  // how to apply the switch
  bool attach = false;           // drop node already on the tour
  NodeId link_a = 0, link_b = 0; // insertion link when not attaching
};

// Screen an SPV-served order against the current DV tour: nearest DV stop,
// round-trip upper bound, two-link insertion estimate, and the extra fixed
// cost when the added stop crosses a truckload boundary.
inline SwitchCandidate evaluate_candidate(const DistCache& cache, const Instance& inst,
                                          const DvRoute& dv_route, double spv_cost, PdoId pdo) {
  SwitchCandidate cand;
  cand.pdo = pdo;
  cand.spv_cost = spv_cost;
  if (dv_route.degenerate()) return cand;  // nothing to neighbor against

  const NodeId node = inst.pdo(pdo).drop_node;
  NodeId nearest = 0;
  double nearest_cost = std::numeric_limits<double>::infinity();
  std::size_t nearest_pos = 0;
  for (std::size_t i = 1; i + 1 < dv_route.stops.size(); ++i) {
    const NodeId j = dv_route.stops[i];
    const double cij = (node == j) ? 0.0 : cache.cost(VehicleClass::Dv, node, j);
    if (cij < nearest_cost - 1e-12 ||
        (std::abs(cij - nearest_cost) <= 1e-12 && j < nearest)) {
      nearest = j;
      nearest_cost = cij;
      nearest_pos = i;
    }
  }
  cand.nearest_dv_stop = nearest;
  if (!(2.0 * nearest_cost < spv_cost)) return cand;  // round-trip bound screens it out

  if (node == nearest) {
    cand.attach = true;
    cand.insertion_cost = 0.0;
  } else {
    const NodeId before = dv_route.stops[nearest_pos - 1];
    const NodeId after = dv_route.stops[nearest_pos + 1];
    const double left = detail::insertion_delta(cache, before, nearest, node);
    const double right = detail::insertion_delta(cache, nearest, after, node);
    if (left <= right) {
      cand.insertion_cost = left;
      cand.link_a = before;
      cand.link_b = nearest;
    } else {
      cand.insertion_cost = right;
      cand.link_a = nearest;
      cand.link_b = after;
    }
  }
  const int load = dv_route.load();
  const int added = cand.attach ? 0 : 1;
  cand.triggers_new_dv = (load + added) / inst.dv_spec.max_stops > load / inst.dv_spec.max_stops;
  cand.saving = spv_cost - cand.insertion_cost -
                (cand.triggers_new_dv ? inst.dv_spec.fixed_cost : 0.0);
  cand.improving = cand.saving > 0.0;
  return cand;
}

struct SwitchRecord {
  PdoId pdo = 0;
  double saving = 0.0;
  int new_dv_load = 0;
  double pre_cost = 0.0;
  double post_cost = 0.0;
};

struct SwitchOutcome {
  std::map<SpvId, SpvWorkingPlan> spv_plans;
  DvRoute dv_route;
  std::vector<SwitchRecord> log;
  double estimated_total = 0.0;
};

// Greedy order switching from SPVs onto the DV tour: each round evaluates
// every SPV-served order and moves the one with the largest positive saving;
// ends when no saving remains. Each switch lowers the estimated total by
// exactly the logged saving.
inline SwitchOutcome switch_loop(const DistCache& cache, const Instance& inst,
                                 const std::map<SpvId, std::vector<CandidateRoute>>& routes_per_spv,
                                 std::map<SpvId, SpvWorkingPlan> spv_plans, DvRoute dv_route) {
  SwitchOutcome out;

  double est_spv = 0.0;
  for (const auto& [sid, plan] : spv_plans)
    est_spv += routes_per_spv.at(sid)[static_cast<std::size_t>(plan.route_index)].detour_cost +
               inst.params.per_pdo_compensation * static_cast<double>(plan.served.size());
  double est_dv_var = dv_route_cost(cache, dv_route);
  double est_dv_fixed =
      dv_route.degenerate()
          ? 0.0
          : inst.dv_spec.fixed_cost *
                std::ceil(static_cast<double>(dv_route.load()) / inst.dv_spec.max_stops);

  while (true) {
    SpvId best_spv = 0;
    SwitchCandidate best;
    for (const auto& [sid, plan] : spv_plans) {
      const auto& routes = routes_per_spv.at(sid);
      for (PdoId pid : plan.served) {
        const double sc = spv_service_cost(inst, routes, plan, pid);
        const SwitchCandidate cand = evaluate_candidate(cache, inst, dv_route, sc, pid);
        if (cand.improving && cand.saving > best.saving + 1e-9) {
          best = cand;
          best_spv = sid;
        }
      }
    }
    if (!best.improving || best.saving <= 1e-9) break;

    const double pre = est_spv + est_dv_var + est_dv_fixed;
    const NodeId node = inst.pdo(best.pdo).drop_node;
    if (!best.attach) {
      for (std::size_t i = 0; i + 1 < dv_route.stops.size(); ++i)
        if (dv_route.stops[i] == best.link_a && dv_route.stops[i + 1] == best.link_b) {
          dv_route.stops.insert(dv_route.stops.begin() + static_cast<std::ptrdiff_t>(i) + 1, node);
          break;
        }
    }
    dv_route.served_pdos.push_back(best.pdo);
    std::sort(dv_route.served_pdos.begin(), dv_route.served_pdos.end());

    auto& plan = spv_plans.at(best_spv);
    plan.served.erase(std::find(plan.served.begin(), plan.served.end(), best.pdo));
    if (plan.served.empty()) {
      spv_plans.erase(best_spv);
    } else {
      plan.route_index = best_route_for(routes_per_spv.at(best_spv), plan.served).first;
    }

    est_spv -= best.spv_cost;
    est_dv_var += best.insertion_cost;
    if (best.triggers_new_dv) est_dv_fixed += inst.dv_spec.fixed_cost;
    out.log.push_back({best.pdo, best.saving, dv_route.load(), pre, est_spv + est_dv_var + est_dv_fixed});
  }

  detail::refresh_schedule(cache, inst, dv_route);
  out.spv_plans = std::move(spv_plans);
  out.dv_route = std::move(dv_route);
  out.estimated_total = est_spv + est_dv_var + est_dv_fixed;
  return out;
}

}  // namespace ctd
