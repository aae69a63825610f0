#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ctd/graph.hpp"
#include "ctd/instance.hpp"

namespace ctd {

inline constexpr std::size_t kDefaultMaxRoutesPerSpv = 200;

struct BudgetedPathQuery {
  NodeId source = 0;
  NodeId target = 0;
  double budget_min = 0.0;
};

struct PathEntry {
  std::vector<NodeId> nodes;
  double time_min = 0.0;
};

namespace detail {

// Canonical left-to-right time accumulation. Both enumeration engines rank
// and budget-filter paths with this sum so their outputs agree bit for bit.
inline double path_time(const Network& net, double pace, const std::vector<NodeId>& nodes) {
  double t = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    t += net.arc(net.arc_between(nodes[i], nodes[i + 1])).length_miles * pace;
  return t;
}

inline void sort_entries(std::vector<PathEntry>& out) {
  std::sort(out.begin(), out.end(), [](const PathEntry& a, const PathEntry& b) {
    if (a.time_min != b.time_min) return a.time_min < b.time_min;
    return a.nodes < b.nodes;
  });
}

}  // namespace detail

// Exhaustive depth-first enumeration of all simple paths within the budget.
inline std::vector<PathEntry> enumerate_paths_recursive(const Network& net, const CostModel& model,
                                                        VehicleClass cls,
                                                        const BudgetedPathQuery& q) {
  net.dense(q.source);
  net.dense(q.target);
  std::vector<PathEntry> out;
  if (q.source == q.target) {
    if (q.budget_min >= -kBudgetSlack) out.push_back({{q.source}, 0.0});
    return out;
  }
  const double pace = model.pace(cls);
  const double limit = q.budget_min + kBudgetSlack;
  std::vector<char> visited(net.node_count(), 0);
  std::vector<NodeId> path;

  auto dfs = [&](auto&& self, NodeId u, double t) -> void {
    if (u == q.target) {
      out.push_back({path, detail::path_time(net, pace, path)});
      return;
    }
    for (std::size_t ai : net.outgoing(u)) {
      const Arc& a = net.arcs()[ai];
      const int hv = net.dense(a.head);
      if (visited[static_cast<std::size_t>(hv)]) continue;
      const double nt = t + a.length_miles * pace;
      if (nt > limit) continue;
      visited[static_cast<std::size_t>(hv)] = 1;
      path.push_back(a.head);
      self(self, a.head, nt);
      path.pop_back();
      visited[static_cast<std::size_t>(hv)] = 0;
    }
  };
  visited[static_cast<std::size_t>(net.dense(q.source))] = 1;
  path.push_back(q.source);
  dfs(dfs, q.source, 0.0);
  detail::sort_entries(out);
  return out;
}

namespace detail {

// Dijkstra from `source`, skipping banned nodes entirely and the given head
// nodes on the first hop. Used for Yen spur searches.
inline std::optional<std::vector<NodeId>> spur_shortest(const Network& net, NodeId source,
                                                        NodeId target,
                                                        const std::vector<char>& banned_node,
                                                        const std::set<NodeId>& banned_first_hop) {
  const int n = static_cast<int>(net.node_count());
  std::vector<double> dist(static_cast<std::size_t>(n), SpTree::kInf);
  std::vector<int> pred(static_cast<std::size_t>(n), -1);
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[static_cast<std::size_t>(net.dense(source))] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, uid] = heap.top();
    heap.pop();
    const int u = net.dense(uid);
    if (done[static_cast<std::size_t>(u)]) continue;
    done[static_cast<std::size_t>(u)] = 1;
    if (uid == target) break;
    for (std::size_t ai : net.outgoing_dense(u)) {
      const Arc& a = net.arcs()[ai];
      if (uid == source && banned_first_hop.count(a.head)) continue;
      const int v = net.dense(a.head);
      if (done[static_cast<std::size_t>(v)] || banned_node[static_cast<std::size_t>(v)]) continue;
      const double nd = d + a.length_miles;
      double& dv = dist[static_cast<std::size_t>(v)];
      int& pv = pred[static_cast<std::size_t>(v)];
      if (nd < dv) {
        dv = nd;
        pv = u;
        heap.emplace(nd, a.head);
      } else if (nd == dv && pv >= 0 && uid < net.id_of(pv)) {
        pv = u;
      }
    }
  }
  const int t = net.dense(target);
  if (target != source && pred[static_cast<std::size_t>(t)] < 0) return std::nullopt;
  std::vector<int> rev;
  for (int v = t; v != -1; v = pred[static_cast<std::size_t>(v)]) rev.push_back(v);
  std::vector<NodeId> nodes;
  nodes.reserve(rev.size());
  for (auto it = rev.rbegin(); it != rev.rend(); ++it) nodes.push_back(net.id_of(*it));
  return nodes;
}

// Prefix trie over accepted paths; children of the node for prefix
// a[0..i] are exactly the next-hops that must be banned at spur depth i.
struct PathTrie {
  std::vector<std::map<NodeId, int>> children = std::vector<std::map<NodeId, int>>(1);

  void insert(const std::vector<NodeId>& path) {
    int cur = 0;
    for (std::size_t i = 1; i < path.size(); ++i) {
      auto [it, fresh] = children[static_cast<std::size_t>(cur)].try_emplace(
          path[i], static_cast<int>(children.size()));
      if (fresh) children.emplace_back();
      cur = it->second;
    }
  }
};

}  // namespace detail

// Yen's k-shortest-paths adapted to a travel budget: paths come out in
// nondecreasing travel time, so enumeration can stop at the budget or after
// max_paths routes without generating the rest.
inline std::vector<PathEntry> enumerate_paths_yen(const Network& net, const CostModel& model,
                                                  VehicleClass cls, const BudgetedPathQuery& q,
                                                  std::size_t max_paths = static_cast<std::size_t>(-1)) {
  net.dense(q.source);
  net.dense(q.target);
  std::vector<PathEntry> out;
  if (max_paths == 0) return out;
  if (q.source == q.target) {
    if (q.budget_min >= -kBudgetSlack) out.push_back({{q.source}, 0.0});
    return out;
  }
  const double pace = model.pace(cls);
  const double limit = q.budget_min + kBudgetSlack;

  std::vector<char> no_ban(net.node_count(), 0);
  auto first = detail::spur_shortest(net, q.source, q.target, no_ban, {});
  if (!first) return out;
  {
    const double t = detail::path_time(net, pace, *first);
    if (t > limit) return out;
    out.push_back({*first, t});
  }

  detail::PathTrie trie;
  trie.insert(*first);
  std::set<std::pair<double, std::vector<NodeId>>> candidates;  // ordered + deduplicated
  std::set<std::vector<NodeId>> known;                          // accepted or queued
  known.insert(*first);

  std::vector<char> banned(net.node_count(), 0);
  while (out.size() < max_paths) {
    const std::vector<NodeId>& last = out.back().nodes;
    // spur from every node of the last accepted path except its target
    int trie_node = 0;
    for (std::size_t i = 0; i + 1 < last.size(); ++i) {
      const NodeId spur = last[i];
      std::set<NodeId> first_hop_ban;
      for (const auto& [head, child] : trie.children[static_cast<std::size_t>(trie_node)])
        first_hop_ban.insert(head);
      for (std::size_t j = 0; j < i; ++j) banned[static_cast<std::size_t>(net.dense(last[j]))] = 1;

      auto spur_path = detail::spur_shortest(net, spur, q.target, banned, first_hop_ban);
      for (std::size_t j = 0; j < i; ++j) banned[static_cast<std::size_t>(net.dense(last[j]))] = 0;

      if (spur_path) {
        std::vector<NodeId> total(last.begin(), last.begin() + static_cast<std::ptrdiff_t>(i));
        total.insert(total.end(), spur_path->begin(), spur_path->end());
        const double t = detail::path_time(net, pace, total);
        if (t <= limit && !known.count(total)) {
          known.insert(total);
          candidates.emplace(t, std::move(total));
        }
      }
      trie_node = trie.children[static_cast<std::size_t>(trie_node)].at(last[i + 1]);
    }
    if (candidates.empty()) break;
    auto best = candidates.begin();
    out.push_back({best->second, best->first});
    trie.insert(best->second);
    candidates.erase(best);
  }
  detail::sort_entries(out);
  return out;
}

// Remaining travel allowance for the depot -> destination leg. Nullopt when
// the depot cannot be reached from the SPV origin at all.
inline std::optional<double> spv_budget(const DistCache& cache, const Instance& inst, const Spv& s) {
  double access = 0.0;
  if (!inst.spv_origins_at_depot && s.origin != inst.depot) {
    if (!cache.reachable(s.origin, inst.depot)) return std::nullopt;
    access = cache.time_minutes(VehicleClass::Spv, s.origin, inst.depot);
  }
  return std::max(0.0, s.detour_willingness_min - access - inst.params.service_time_min);
}

inline std::optional<double> spv_budget(const Instance& inst, const Spv& s) {
  DistCache cache(inst.network, inst.params.cost_model);
  return spv_budget(cache, inst, s);
}

// One enumerated depot -> destination route for an SPV, annotated with the
// orders it can feasibly carry. The null route (index 0 of every candidate
// list) is the driver's direct trip with no deliveries.
struct CandidateRoute {
  SpvId spv_id = 0;
  std::vector<NodeId> path;  // empty for the null route
  double travel_time_min = 0.0;
  double detour_cost = 0.0;
  std::vector<PdoId> servable;  // sorted
  bool is_null_route = false;

  bool can_serve(PdoId p) const {
    return std::binary_search(servable.begin(), servable.end(), p);
  }
};

inline CandidateRoute make_null_route(const Spv& s) {
  CandidateRoute r;
  r.spv_id = s.id;
  r.is_null_route = true;
  return r;
}

// All budget-feasible candidate routes for one SPV, null route first, then
// enumerated routes in ascending travel time (capped at max_routes).
inline std::vector<CandidateRoute> generate_candidate_routes(const DistCache& cache,
                                                             const Instance& inst, const Spv& s,
                                                             std::size_t max_routes = kDefaultMaxRoutesPerSpv) {
  std::vector<CandidateRoute> out;
  out.push_back(make_null_route(s));

  const auto budget = spv_budget(cache, inst, s);
  if (!budget) return out;

  BudgetedPathQuery q{inst.depot, s.destination, *budget};
  const auto paths = enumerate_paths_yen(inst.network, inst.params.cost_model, VehicleClass::Spv, q,
                                         max_routes);
  if (paths.empty()) return out;

  // base pickup moment, before waiting on any order
  const double base_pickup = s.earliest_start + spv_access_leg(cache, inst, s).time_min;
  const double pace = inst.params.cost_model.pace(VehicleClass::Spv);

  for (const auto& pe : paths) {
    CandidateRoute r;
    r.spv_id = s.id;
    r.path = pe.nodes;
    r.travel_time_min = pe.time_min;
    r.detour_cost = spv_detour_cost(cache, inst, s, pe.nodes);

    // arrival offsets along the path, measured from depot departure
    std::map<NodeId, double> offset;
    double t = 0.0;
    offset[pe.nodes.front()] = 0.0;
    for (std::size_t i = 0; i + 1 < pe.nodes.size(); ++i) {
      t += inst.network.arc(inst.network.arc_between(pe.nodes[i], pe.nodes[i + 1])).length_miles * pace;
      offset[pe.nodes[i + 1]] = t;
    }
    const double total_time = t;

    for (const auto& p : inst.pdos) {
      auto it = offset.find(p.drop_node);
      if (it == offset.end()) continue;
      const double pickup = std::max(base_pickup, p.earliest_pickup);
      const double departure = pickup + inst.params.service_time_min;
      if (departure + it->second > p.latest_delivery + kBudgetSlack) continue;
      if (departure + total_time > s.latest_arrival + kBudgetSlack) continue;
      r.servable.push_back(p.id);
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<CandidateRoute> generate_candidate_routes(const Instance& inst, const Spv& s,
                                                             std::size_t max_routes = kDefaultMaxRoutesPerSpv) {
  DistCache cache(inst.network, inst.params.cost_model);
  return generate_candidate_routes(cache, inst, s, max_routes);
}

}  // namespace ctd
