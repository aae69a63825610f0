#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ctd/instance.hpp"
#include "ctd/route_enum.hpp"

namespace ctd {

namespace detail {

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t bits) : words_((bits + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i >> 6] |= (1ULL << (i & 63)); }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1ULL; }
  bool intersects(const Bitset& o) const {
    const std::size_t n = std::min(words_.size(), o.words_.size());
    for (std::size_t i = 0; i < n; ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  bool is_subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      const std::uint64_t other = i < o.words_.size() ? o.words_[i] : 0;
      if (words_[i] & ~other) return false;
    }
    return true;
  }
  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }

 private:
  std::vector<std::uint64_t> words_;
};

}  // namespace detail

struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Order -> SPV-route matching problem over an active SPV set. Route index 0
// of every SPV is its null route; the reward makes any feasible match
// preferable to leaving an order unserved.
struct AssignmentProblem {
  struct PerSpv {
    SpvId spv = 0;
    int cap = 1;  // orders the SPV will carry on its one chosen route
    std::vector<const CandidateRoute*> routes;
  };
  std::vector<PerSpv> spvs;
  std::vector<PdoId> pdos;
  double reward = 0.0;

  void validate() const {
    double max_cost = 0.0;
    for (const auto& s : spvs) {
      if (s.routes.empty() || !s.routes.front()->is_null_route)
        throw std::invalid_argument("every SPV needs its null route at index 0");
      for (const auto* r : s.routes) max_cost = std::max(max_cost, r->detour_cost);
    }
    if (!(reward > max_cost))
      throw std::invalid_argument("reward must exceed every route cost");
  }
};

inline double default_reward(const Instance& inst,
                             const std::vector<std::vector<CandidateRoute>>& routes_per_spv) {
  double max_cost = 0.0;
  for (const auto& rs : routes_per_spv)
    for (const auto& r : rs) max_cost = std::max(max_cost, r.detour_cost);
  return 10.0 * (inst.dv_spec.fixed_cost + max_cost);
}

struct AssignmentResult {
  std::map<SpvId, int> chosen_route;                       // route index per SPV, 0 = null
  std::map<PdoId, std::pair<SpvId, int>> pdo_assignment;   // absent = unassigned
  double objective = 0.0;
  bool converged = true;  // false when Benders stopped on its iteration cap
};

inline double objective_value(const AssignmentProblem& prob, const AssignmentResult& res) {
  double obj = prob.reward * static_cast<double>(res.pdo_assignment.size());
  for (const auto& s : prob.spvs) {
    auto it = res.chosen_route.find(s.spv);
    if (it == res.chosen_route.end()) continue;
    obj -= s.routes[static_cast<std::size_t>(it->second)]->detour_cost;
  }
  return obj;
}

namespace detail {

// Flattened problem: non-null routes only, orders as dense indices.
struct CompactAssignment {
  int num_pdos = 0;
  std::vector<PdoId> pdos;
  std::map<PdoId, int> pdo_index;
  std::vector<SpvId> spv_ids;
  std::vector<int> caps;

  struct Route {
    int spv = 0;
    int orig_index = 0;  // index within the SPV's candidate list
    double cost = 0.0;
    Bitset servable;
    std::vector<int> servable_list;
  };
  std::vector<Route> routes;
  std::vector<std::vector<int>> spv_routes;  // flat indices per SPV
  double reward = 0.0;

  static CompactAssignment build(const AssignmentProblem& prob) {
    CompactAssignment c;
    c.reward = prob.reward;
    c.num_pdos = static_cast<int>(prob.pdos.size());
    c.pdos = prob.pdos;
    for (int i = 0; i < c.num_pdos; ++i) c.pdo_index[c.pdos[static_cast<std::size_t>(i)]] = i;
    c.spv_routes.resize(prob.spvs.size());
    for (std::size_t k = 0; k < prob.spvs.size(); ++k) {
      c.spv_ids.push_back(prob.spvs[k].spv);
      c.caps.push_back(prob.spvs[k].cap);
      for (std::size_t ri = 0; ri < prob.spvs[k].routes.size(); ++ri) {
        const CandidateRoute* r = prob.spvs[k].routes[ri];
        if (r->is_null_route) continue;
        Route cr;
        cr.spv = static_cast<int>(k);
        cr.orig_index = static_cast<int>(ri);
        cr.cost = r->detour_cost;
        cr.servable = Bitset(static_cast<std::size_t>(c.num_pdos));
        for (PdoId pid : r->servable) {
          auto it = c.pdo_index.find(pid);
          if (it == c.pdo_index.end()) continue;
          cr.servable.set(static_cast<std::size_t>(it->second));
          cr.servable_list.push_back(it->second);
        }
        c.spv_routes[k].push_back(static_cast<int>(c.routes.size()));
        c.routes.push_back(std::move(cr));
      }
    }
    return c;
  }
};

// Maximum-cardinality order -> active-route matching (Kuhn augmentation with
// route capacities) plus the residual-reachability sets that certify an
// optimal dual solution of the matching LP.
struct MatchingOutcome {
  std::vector<int> pdo_route;                 // flat route index or -1, per pdo
  std::vector<std::vector<int>> route_pdos;   // per spv slot: matched pdo indices
  int cardinality = 0;
  std::vector<char> pdo_uncovered;   // 1 => dual price 0 (order side)
  std::vector<char> route_priced;    // per spv slot: 1 => dual price on the active route
};

// active[k] = flat route index chosen for SPV k, or -1 for the null route.
inline MatchingOutcome solve_matching(const CompactAssignment& c, const std::vector<int>& active) {
  const int S = static_cast<int>(c.spv_ids.size());
  const int P = c.num_pdos;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(P));  // pdo -> spv slots
  for (int k = 0; k < S; ++k) {
    if (active[static_cast<std::size_t>(k)] < 0) continue;
    const auto& r = c.routes[static_cast<std::size_t>(active[static_cast<std::size_t>(k)])];
    for (int p : r.servable_list) adj[static_cast<std::size_t>(p)].push_back(k);
  }

  MatchingOutcome m;
  m.pdo_route.assign(static_cast<std::size_t>(P), -1);
  m.route_pdos.assign(static_cast<std::size_t>(S), {});
  std::vector<int> pdo_slot(static_cast<std::size_t>(P), -1);  // spv slot a pdo is matched to
  std::vector<char> visited(static_cast<std::size_t>(S), 0);

  auto augment = [&](auto&& self, int p) -> bool {
    for (int k : adj[static_cast<std::size_t>(p)]) {
      if (visited[static_cast<std::size_t>(k)]) continue;
      visited[static_cast<std::size_t>(k)] = 1;
      auto& mates = m.route_pdos[static_cast<std::size_t>(k)];
      if (static_cast<int>(mates.size()) < c.caps[static_cast<std::size_t>(k)]) {
        mates.push_back(p);
        pdo_slot[static_cast<std::size_t>(p)] = k;
        return true;
      }
      for (std::size_t i = 0; i < mates.size(); ++i) {
        const int q = mates[i];
        if (self(self, q)) {
          mates[i] = p;
          pdo_slot[static_cast<std::size_t>(p)] = k;
          return true;
        }
      }
    }
    return false;
  };

  for (int p = 0; p < P; ++p) {
    if (adj[static_cast<std::size_t>(p)].empty()) continue;
    std::fill(visited.begin(), visited.end(), 0);
    if (augment(augment, p)) ++m.cardinality;
  }
  for (int k = 0; k < S; ++k) {
    std::sort(m.route_pdos[static_cast<std::size_t>(k)].begin(),
              m.route_pdos[static_cast<std::size_t>(k)].end());
    for (int p : m.route_pdos[static_cast<std::size_t>(k)])
      m.pdo_route[static_cast<std::size_t>(p)] = active[static_cast<std::size_t>(k)];
  }

  // Residual reachability from unmatched orders: reachable orders carry a
  // zero dual price, reachable routes carry the full reward as price.
  m.pdo_uncovered.assign(static_cast<std::size_t>(P), 0);
  m.route_priced.assign(static_cast<std::size_t>(S), 0);
  std::vector<int> stack;
  for (int p = 0; p < P; ++p)
    if (pdo_slot[static_cast<std::size_t>(p)] < 0 && !adj[static_cast<std::size_t>(p)].empty()) {
      m.pdo_uncovered[static_cast<std::size_t>(p)] = 1;
      stack.push_back(p);
    }
  // orders no active route can serve are also "uncovered" (their constraint
  // is slack, dual price 0)
  for (int p = 0; p < P; ++p)
    if (adj[static_cast<std::size_t>(p)].empty()) m.pdo_uncovered[static_cast<std::size_t>(p)] = 1;
  while (!stack.empty()) {
    const int p = stack.back();
    stack.pop_back();
    for (int k : adj[static_cast<std::size_t>(p)]) {
      if (m.route_priced[static_cast<std::size_t>(k)]) continue;
      m.route_priced[static_cast<std::size_t>(k)] = 1;
      for (int q : m.route_pdos[static_cast<std::size_t>(k)]) {
        if (!m.pdo_uncovered[static_cast<std::size_t>(q)]) {
          m.pdo_uncovered[static_cast<std::size_t>(q)] = 1;
          stack.push_back(q);
        }
      }
    }
  }
  return m;
}

inline double active_cost(const CompactAssignment& c, const std::vector<int>& active) {
  double cost = 0.0;
  for (int fr : active)
    if (fr >= 0) cost += c.routes[static_cast<std::size_t>(fr)].cost;
  return cost;
}

}  // namespace detail

// Primal/dual solution of the matching subproblem for a fixed route choice.
struct SubproblemSolution {
  std::map<PdoId, std::pair<SpvId, int>> assignment;
  std::vector<double> lambda_pdo;    // per problem.pdos order
  std::vector<double> lambda_route;  // per (spv, non-null route) in flat order
  double value = 0.0;                // reward * matched - cost of fixed routes
};

// fixed_choice: route index per SPV (0 = null route).
inline SubproblemSolution solve_subproblem(const AssignmentProblem& prob,
                                           const std::map<SpvId, int>& fixed_choice) {
  prob.validate();
  auto c = detail::CompactAssignment::build(prob);
  std::vector<int> active(c.spv_ids.size(), -1);
  for (std::size_t k = 0; k < c.spv_ids.size(); ++k) {
    auto it = fixed_choice.find(c.spv_ids[k]);
    if (it == fixed_choice.end() || it->second == 0) continue;
    for (int fr : c.spv_routes[k])
      if (c.routes[static_cast<std::size_t>(fr)].orig_index == it->second) active[k] = fr;
    if (active[k] < 0) throw std::invalid_argument("fixed choice names a route that does not exist");
  }
  const auto m = detail::solve_matching(c, active);

  SubproblemSolution out;
  out.value = c.reward * m.cardinality - detail::active_cost(c, active);
  for (int p = 0; p < c.num_pdos; ++p) {
    const int fr = m.pdo_route[static_cast<std::size_t>(p)];
    if (fr < 0) continue;
    const auto& r = c.routes[static_cast<std::size_t>(fr)];
    out.assignment[c.pdos[static_cast<std::size_t>(p)]] = {c.spv_ids[static_cast<std::size_t>(r.spv)],
                                                           r.orig_index};
  }
  out.lambda_pdo.assign(static_cast<std::size_t>(c.num_pdos), 0.0);
  for (int p = 0; p < c.num_pdos; ++p)
    if (!m.pdo_uncovered[static_cast<std::size_t>(p)]) out.lambda_pdo[static_cast<std::size_t>(p)] = c.reward;
  // price of any route, active or not: the reward when some order it can
  // serve still has a zero price, else zero
  detail::Bitset uncovered(static_cast<std::size_t>(c.num_pdos));
  for (int p = 0; p < c.num_pdos; ++p)
    if (m.pdo_uncovered[static_cast<std::size_t>(p)]) uncovered.set(static_cast<std::size_t>(p));
  out.lambda_route.reserve(c.routes.size());
  for (const auto& r : c.routes)
    out.lambda_route.push_back(r.servable.intersects(uncovered) ? c.reward : 0.0);
  return out;
}

// Exhaustive branch-and-bound over per-SPV route choices. Refuses instances
// whose (pruned) choice product exceeds max_combinations.
inline AssignmentResult solve_assignment_exact(const AssignmentProblem& prob,
                                               double max_combinations = 1e4) {
  prob.validate();
  auto c = detail::CompactAssignment::build(prob);
  const int S = static_cast<int>(c.spv_ids.size());

  // dominance pruning: a route is dropped when another route of the same SPV
  // serves a superset at no higher cost (ties keep the lower index)
  std::vector<std::vector<int>> choice_lists(static_cast<std::size_t>(S));
  for (int k = 0; k < S; ++k) {
    const auto& lst = c.spv_routes[static_cast<std::size_t>(k)];
    for (int fr : lst) {
      const auto& r = c.routes[static_cast<std::size_t>(fr)];
      if (!r.servable.any() && r.cost >= 0.0) continue;  // never beats the null route
      bool dominated = false;
      for (int fo : lst) {
        if (fo == fr) continue;
        const auto& o = c.routes[static_cast<std::size_t>(fo)];
        if (!r.servable.is_subset_of(o.servable)) continue;
        if (o.cost < r.cost - 1e-12 ||
            (std::abs(o.cost - r.cost) <= 1e-12 && o.orig_index < r.orig_index)) {
          dominated = true;
          break;
        }
      }
      if (!dominated) choice_lists[static_cast<std::size_t>(k)].push_back(fr);
    }
  }

  double combos = 1.0;
  for (const auto& lst : choice_lists) {
    combos *= static_cast<double>(lst.size() + 1);
    if (combos > max_combinations)
      throw CapacityError("route-choice combinations exceed the exact-solver limit");
  }

  std::vector<int> active(static_cast<std::size_t>(S), -1);
  std::vector<int> best_active;
  double best_obj = -std::numeric_limits<double>::infinity();

  int total_cap = 0;
  for (int cap : c.caps) total_cap += cap;

  auto dfs = [&](auto&& self, int k, double cost_so_far, int cap_so_far) -> void {
    if (k == S) {
      const auto m = detail::solve_matching(c, active);
      const double obj = c.reward * m.cardinality - cost_so_far;
      if (obj > best_obj + 1e-9) {
        best_obj = obj;
        best_active = active;
      }
      return;
    }
    int cap_rest = cap_so_far;
    for (int j = k; j < S; ++j) cap_rest += c.caps[static_cast<std::size_t>(j)];
    const double bound = c.reward * std::min(c.num_pdos, cap_rest) - cost_so_far;
    if (bound <= best_obj + 1e-9) return;

    // the null route first keeps exploration in lexicographic order
    active[static_cast<std::size_t>(k)] = -1;
    self(self, k + 1, cost_so_far, cap_so_far);
    for (int fr : choice_lists[static_cast<std::size_t>(k)]) {
      active[static_cast<std::size_t>(k)] = fr;
      self(self, k + 1, cost_so_far + c.routes[static_cast<std::size_t>(fr)].cost,
           cap_so_far + c.caps[static_cast<std::size_t>(k)]);
    }
    active[static_cast<std::size_t>(k)] = -1;
  };
  dfs(dfs, 0, 0.0, 0);

  AssignmentResult res;
  res.objective = best_obj;
  const auto m = detail::solve_matching(c, best_active);
  for (int k = 0; k < S; ++k) {
    const int fr = best_active[static_cast<std::size_t>(k)];
    res.chosen_route[c.spv_ids[static_cast<std::size_t>(k)]] =
        fr < 0 ? 0 : c.routes[static_cast<std::size_t>(fr)].orig_index;
  }
  for (int p = 0; p < c.num_pdos; ++p) {
    const int fr = m.pdo_route[static_cast<std::size_t>(p)];
    if (fr < 0) continue;
    const auto& r = c.routes[static_cast<std::size_t>(fr)];
    res.pdo_assignment[c.pdos[static_cast<std::size_t>(p)]] = {
        c.spv_ids[static_cast<std::size_t>(r.spv)], r.orig_index};
  }
  return res;
}

// One optimality cut: Z <= base + sum over chosen routes of
// (cap * reward * [route can serve an uncovered order] - route cost).
struct BendersCut {
  double base = 0.0;
  detail::Bitset uncovered;
};

struct BendersIteration {
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  std::vector<double> lambda_pdo;
};

struct BendersState {
  double lower_bound = -std::numeric_limits<double>::infinity();
  double upper_bound = std::numeric_limits<double>::infinity();
  std::vector<BendersCut> cuts;
  std::vector<BendersIteration> iterations;
  double epsilon = 1e-6;
  bool converged = false;
};

struct BendersOptions {
  double epsilon = 1e-6;
  int max_iterations = 500;
  long long master_node_cap = 2'000'000;
};

namespace detail {

struct MasterSolution {
  std::vector<int> active;  // flat route index per SPV, -1 = null
  double value = 0.0;       // valid upper bound on the assignment optimum
  bool exact = true;
};

// Master problem: pick at most one route per SPV maximizing the minimum over
// all cuts. Routes with identical hot/cold signatures across cuts collapse to
// the cheapest representative before the branch-and-bound.
inline MasterSolution solve_master(const CompactAssignment& c, const std::vector<BendersCut>& cuts,
                                   long long node_cap) {
  const int S = static_cast<int>(c.spv_ids.size());
  const int T = static_cast<int>(cuts.size());

  struct Choice {
    int flat = -1;  // -1 = null
    std::vector<double> coef;
  };
  std::vector<std::vector<Choice>> choices(static_cast<std::size_t>(S));
  std::vector<std::vector<double>> best_coef(static_cast<std::size_t>(T),
                                             std::vector<double>(static_cast<std::size_t>(S), 0.0));
  for (int k = 0; k < S; ++k) {
    auto& lst = choices[static_cast<std::size_t>(k)];
    lst.push_back({-1, std::vector<double>(static_cast<std::size_t>(T), 0.0)});
    std::map<std::vector<char>, int> sig_best;  // hot signature -> flat route
    for (int fr : c.spv_routes[static_cast<std::size_t>(k)]) {
      const auto& r = c.routes[static_cast<std::size_t>(fr)];
      std::vector<char> sig(static_cast<std::size_t>(T), 0);
      for (int t = 0; t < T; ++t)
        sig[static_cast<std::size_t>(t)] =
            r.servable.intersects(cuts[static_cast<std::size_t>(t)].uncovered) ? 1 : 0;
      auto [it, fresh] = sig_best.try_emplace(std::move(sig), fr);
      if (!fresh && c.routes[static_cast<std::size_t>(it->second)].cost > r.cost) it->second = fr;
    }
    for (const auto& [sig, fr] : sig_best) {
      const auto& r = c.routes[static_cast<std::size_t>(fr)];
      Choice ch;
      ch.flat = fr;
      ch.coef.resize(static_cast<std::size_t>(T));
      bool useful = false;
      for (int t = 0; t < T; ++t) {
        const double hot = sig[static_cast<std::size_t>(t)]
                               ? static_cast<double>(c.caps[static_cast<std::size_t>(k)]) * c.reward
                               : 0.0;
        ch.coef[static_cast<std::size_t>(t)] = hot - r.cost;
        if (ch.coef[static_cast<std::size_t>(t)] > 0) useful = true;
      }
      if (useful) lst.push_back(std::move(ch));
    }
    for (int t = 0; t < T; ++t)
      for (const auto& ch : lst)
        best_coef[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)] =
            std::max(best_coef[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)],
                     ch.coef[static_cast<std::size_t>(t)]);
  }

  // suffix[t][k] = best possible contribution of SPVs k.. to cut t
  std::vector<std::vector<double>> suffix(static_cast<std::size_t>(T),
                                          std::vector<double>(static_cast<std::size_t>(S) + 1, 0.0));
  for (int t = 0; t < T; ++t)
    for (int k = S - 1; k >= 0; --k)
      suffix[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)] =
          suffix[static_cast<std::size_t>(t)][static_cast<std::size_t>(k) + 1] +
          best_coef[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)];

  std::vector<double> partial(static_cast<std::size_t>(T));
  for (int t = 0; t < T; ++t) partial[static_cast<std::size_t>(t)] = cuts[static_cast<std::size_t>(t)].base;

  MasterSolution best;
  best.value = -std::numeric_limits<double>::infinity();
  std::vector<int> pick(static_cast<std::size_t>(S), -1);  // choice index per SPV
  double best_leaf = -std::numeric_limits<double>::infinity();
  std::vector<int> best_pick;
  double abandoned_bound = -std::numeric_limits<double>::infinity();
  long long nodes = 0;
  bool aborted = false;

  auto bound_at = [&](int k) {
    double b = std::numeric_limits<double>::infinity();
    for (int t = 0; t < T; ++t)
      b = std::min(b, partial[static_cast<std::size_t>(t)] +
                          suffix[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)]);
    return b;
  };

  auto dfs = [&](auto&& self, int k) -> void {
    if (aborted) return;
    if (++nodes > node_cap) {
      aborted = true;
      return;
    }
    if (k == S) {
      double v = std::numeric_limits<double>::infinity();
      for (int t = 0; t < T; ++t) v = std::min(v, partial[static_cast<std::size_t>(t)]);
      if (v > best_leaf + 1e-12) {
        best_leaf = v;
        best_pick = pick;
      }
      return;
    }
    for (std::size_t ci = 0; ci < choices[static_cast<std::size_t>(k)].size(); ++ci) {
      const auto& ch = choices[static_cast<std::size_t>(k)][ci];
      for (int t = 0; t < T; ++t) partial[static_cast<std::size_t>(t)] += ch.coef[static_cast<std::size_t>(t)];
      const double b = bound_at(k + 1);
      if (b > best_leaf + 1e-12) {
        if (aborted)
          abandoned_bound = std::max(abandoned_bound, b);
        else
          pick[static_cast<std::size_t>(k)] = static_cast<int>(ci), self(self, k + 1);
      }
      for (int t = 0; t < T; ++t) partial[static_cast<std::size_t>(t)] -= ch.coef[static_cast<std::size_t>(t)];
      if (aborted) abandoned_bound = std::max(abandoned_bound, b);
    }
    pick[static_cast<std::size_t>(k)] = -1;
  };
  dfs(dfs, 0);

  best.exact = !aborted;
  best.value = aborted ? std::max(best_leaf, std::max(abandoned_bound, bound_at(0))) : best_leaf;
  best.active.assign(static_cast<std::size_t>(S), -1);
  if (!best_pick.empty())
    for (int k = 0; k < S; ++k) {
      const int ci = best_pick[static_cast<std::size_t>(k)];
      if (ci >= 0) best.active[static_cast<std::size_t>(k)] =
          choices[static_cast<std::size_t>(k)][static_cast<std::size_t>(ci)].flat;
    }
  return best;
}

}  // namespace detail

// Benders decomposition: the subproblem is the matching LP above, the master
// re-optimizes the route choice against the accumulated optimality cuts.
inline std::pair<AssignmentResult, BendersState> solve_assignment_benders(
    const AssignmentProblem& prob, const BendersOptions& opts = {}) {
  prob.validate();
  auto c = detail::CompactAssignment::build(prob);
  const int S = static_cast<int>(c.spv_ids.size());

  BendersState state;
  state.epsilon = opts.epsilon;

  std::vector<int> current(static_cast<std::size_t>(S), -1);  // start from all-null, always feasible
  std::vector<int> incumbent_active = current;
  detail::MatchingOutcome incumbent_matching;

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    const auto m = detail::solve_matching(c, current);
    const double value = c.reward * m.cardinality - detail::active_cost(c, current);
    if (value > state.lower_bound) {
      state.lower_bound = value;
      incumbent_active = current;
      incumbent_matching = m;
    }

    BendersCut cut;
    cut.uncovered = detail::Bitset(static_cast<std::size_t>(c.num_pdos));
    BendersIteration it;
    it.lambda_pdo.assign(static_cast<std::size_t>(c.num_pdos), 0.0);
    for (int p = 0; p < c.num_pdos; ++p) {
      if (m.pdo_uncovered[static_cast<std::size_t>(p)])
        cut.uncovered.set(static_cast<std::size_t>(p));
      else {
        cut.base += c.reward;
        it.lambda_pdo[static_cast<std::size_t>(p)] = c.reward;
      }
    }
    state.cuts.push_back(cut);

    const auto master = detail::solve_master(c, state.cuts, opts.master_node_cap);
    state.upper_bound = std::min(state.upper_bound, master.value);
    it.lower_bound = state.lower_bound;
    it.upper_bound = state.upper_bound;
    state.iterations.push_back(std::move(it));

    if (state.upper_bound - state.lower_bound <= opts.epsilon) {
      state.converged = true;
      break;
    }
    current = master.active;
  }

  AssignmentResult res;
  res.objective = state.lower_bound;
  res.converged = state.converged;
  for (int k = 0; k < S; ++k) {
    const int fr = incumbent_active[static_cast<std::size_t>(k)];
    res.chosen_route[c.spv_ids[static_cast<std::size_t>(k)]] =
        fr < 0 ? 0 : c.routes[static_cast<std::size_t>(fr)].orig_index;
  }
  for (int p = 0; p < c.num_pdos; ++p) {
    const int fr = incumbent_matching.pdo_route.empty()
                       ? -1
                       : incumbent_matching.pdo_route[static_cast<std::size_t>(p)];
    if (fr < 0) continue;
    const auto& r = c.routes[static_cast<std::size_t>(fr)];
    res.pdo_assignment[c.pdos[static_cast<std::size_t>(p)]] = {
        c.spv_ids[static_cast<std::size_t>(r.spv)], r.orig_index};
  }
  return {res, state};
}

// The returned problem holds pointers into routes_per_spv; the caller keeps
// that storage alive and unmoved while the problem is in use.
inline AssignmentProblem make_assignment_problem(
    const Instance& inst, const std::vector<std::vector<CandidateRoute>>& routes_per_spv,
    std::vector<PdoId> pdos, double reward = 0.0) {
  AssignmentProblem prob;
  prob.pdos = std::move(pdos);
  prob.reward = reward > 0 ? reward : default_reward(inst, routes_per_spv);
  for (const auto& rs : routes_per_spv) {
    if (rs.empty()) continue;
    AssignmentProblem::PerSpv ps;
    ps.spv = rs.front().spv_id;
    ps.cap = inst.spv(ps.spv).max_stops;
    for (const auto& r : rs) ps.routes.push_back(&r);
    prob.spvs.push_back(std::move(ps));
  }
  return prob;
}

enum class AssignmentBackend { Exact, Benders };

// Exact when it fits, Benders otherwise.
inline AssignmentResult solve_assignment(const AssignmentProblem& prob, AssignmentBackend backend,
                                         const BendersOptions& opts = {},
                                         double exact_limit = 1e4) {
  if (backend == AssignmentBackend::Exact) {
    try {
      return solve_assignment_exact(prob, exact_limit);
    } catch (const CapacityError&) {
      // fall through to Benders
    }
  }
  return solve_assignment_benders(prob, opts).first;
}

}  // namespace ctd
