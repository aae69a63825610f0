#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace ctd {

using NodeId = std::int64_t;

enum class VehicleClass { Spv, Dv };

struct Arc {
  NodeId tail = 0;
  NodeId head = 0;
  double length_miles = 0.0;
};

// Per-class speed and mileage rate. Travel time and monetized arc cost are
// both derived from arc length so instances cannot carry inconsistent
// time/cost tables.
struct CostModel {
  double spv_speed_mph = 40.0;
  double dv_speed_mph = 30.0;
  double spv_rate_per_mile = 0.56;
  double dv_rate_per_mile = 1.5;

  double speed_mph(VehicleClass c) const { return c == VehicleClass::Spv ? spv_speed_mph : dv_speed_mph; }
  double rate_per_mile(VehicleClass c) const {
    return c == VehicleClass::Spv ? spv_rate_per_mile : dv_rate_per_mile;
  }
  // minutes per mile
  double pace(VehicleClass c) const { return 60.0 / speed_mph(c); }

  void validate() const {
    if (spv_speed_mph <= 0 || dv_speed_mph <= 0 || spv_rate_per_mile <= 0 || dv_rate_per_mile <= 0)
      throw std::invalid_argument("cost model fields must be strictly positive");
  }

  bool operator==(const CostModel&) const = default;
};

struct ArcMetrics {
  double travel_time_min = 0.0;
  double cost_dollars = 0.0;
};

// Directed road network. Immutable once built; all queries are const and
// safe to run concurrently.
class Network {
 public:
  Network() = default;

  Network(std::vector<NodeId> nodes, std::vector<Arc> arcs) {
    node_ids_ = std::move(nodes);
    std::sort(node_ids_.begin(), node_ids_.end());
    node_ids_.erase(std::unique(node_ids_.begin(), node_ids_.end()), node_ids_.end());
    index_.reserve(node_ids_.size());
    for (std::size_t i = 0; i < node_ids_.size(); ++i) index_[node_ids_[i]] = static_cast<int>(i);

    arcs_ = std::move(arcs);
    for (const Arc& a : arcs_) {
      if (a.tail == a.head)
        throw std::invalid_argument("self-loop arc at node " + std::to_string(a.tail));
      if (!index_.count(a.tail) || !index_.count(a.head))
        throw std::invalid_argument("arc endpoint not a declared node: " + std::to_string(a.tail) +
                                    "->" + std::to_string(a.head));
      if (!(a.length_miles > 0))
        throw std::invalid_argument("arc length must be positive: " + std::to_string(a.tail) + "->" +
                                    std::to_string(a.head));
    }
    out_.assign(node_ids_.size(), {});
    for (std::size_t i = 0; i < arcs_.size(); ++i) out_[dense(arcs_[i].tail)].push_back(i);
    // deterministic neighbor order: by head id, then arc length
    for (auto& lst : out_) {
      std::sort(lst.begin(), lst.end(), [&](std::size_t x, std::size_t y) {
        if (arcs_[x].head != arcs_[y].head) return arcs_[x].head < arcs_[y].head;
        return arcs_[x].length_miles < arcs_[y].length_miles;
      });
    }
  }

  std::size_t node_count() const { return node_ids_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }
  const std::vector<NodeId>& nodes() const { return node_ids_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(std::size_t i) const {
    if (i >= arcs_.size()) throw std::out_of_range("unknown arc index " + std::to_string(i));
    return arcs_[i];
  }

  bool has_node(NodeId id) const { return index_.count(id) > 0; }
  int dense(NodeId id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::out_of_range("unknown node id " + std::to_string(id));
    return it->second;
  }
  NodeId id_of(int dense_idx) const { return node_ids_[static_cast<std::size_t>(dense_idx)]; }
  const std::vector<std::size_t>& outgoing(NodeId id) const { return out_[static_cast<std::size_t>(dense(id))]; }
  const std::vector<std::size_t>& outgoing_dense(int idx) const { return out_[static_cast<std::size_t>(idx)]; }

  // Cheapest arc tail->head, or npos.
  std::size_t arc_between(NodeId tail, NodeId head) const {
    for (std::size_t ai : outgoing(tail))
      if (arcs_[ai].head == head) return ai;  // first hit is cheapest by sort order
    return npos;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<NodeId> node_ids_;  // sorted
  std::unordered_map<NodeId, int> index_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> out_;  // dense node -> arc indices
};

inline ArcMetrics arc_metrics(const Network& net, std::size_t arc_index, const CostModel& model,
                              VehicleClass cls) {
  const Arc& a = net.arc(arc_index);
  return {a.length_miles * model.pace(cls), a.length_miles * model.rate_per_mile(cls)};
}

struct PathResult {
  std::vector<NodeId> nodes;
  double total_time_min = 0.0;
  double total_cost_dollars = 0.0;
  double total_miles = 0.0;
};

struct NoPathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest-path tree from a single source, distances in miles. Time and cost
// rank paths identically to mileage because both scale linearly with length.
struct SpTree {
  std::vector<double> dist_miles;  // by dense index; +inf when unreachable
  std::vector<int> pred;           // dense predecessor index, -1 at source/unreachable

  static constexpr double kInf = std::numeric_limits<double>::infinity();
};

inline SpTree dijkstra(const Network& net, NodeId source) {
  const int n = static_cast<int>(net.node_count());
  SpTree t;
  t.dist_miles.assign(static_cast<std::size_t>(n), SpTree::kInf);
  t.pred.assign(static_cast<std::size_t>(n), -1);
  const int s = net.dense(source);
  t.dist_miles[static_cast<std::size_t>(s)] = 0.0;

  using Item = std::pair<double, NodeId>;  // (dist, node id) keeps pops deterministic
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.emplace(0.0, source);
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  while (!heap.empty()) {
    auto [d, uid] = heap.top();
    heap.pop();
    const int u = net.dense(uid);
    if (done[static_cast<std::size_t>(u)]) continue;
    done[static_cast<std::size_t>(u)] = 1;
    for (std::size_t ai : net.outgoing_dense(u)) {
      const Arc& a = net.arcs()[ai];
      const int v = net.dense(a.head);
      if (done[static_cast<std::size_t>(v)]) continue;
      const double nd = d + a.length_miles;
      double& dv = t.dist_miles[static_cast<std::size_t>(v)];
      int& pv = t.pred[static_cast<std::size_t>(v)];
      if (nd < dv) {
        dv = nd;
        pv = u;
        heap.emplace(nd, a.head);
      } else if (nd == dv && pv >= 0 && uid < net.id_of(pv)) {
        pv = u;  // equal-length tie: keep the smallest predecessor id
      }
    }
  }
  return t;
}

// Time-shortest simple path; totals are exact sums of per-arc metrics.
inline PathResult shortest_path(const Network& net, NodeId origin, NodeId dest, const CostModel& model,
                                VehicleClass cls) {
  net.dense(dest);  // validate
  const SpTree t = dijkstra(net, origin);
  PathResult r;
  if (origin == dest) {
    r.nodes = {origin};
    return r;
  }
  const int d = net.dense(dest);
  if (t.pred[static_cast<std::size_t>(d)] < 0)
    throw NoPathError("no path from " + std::to_string(origin) + " to " + std::to_string(dest));
  std::vector<int> rev;
  for (int v = d; v != -1; v = t.pred[static_cast<std::size_t>(v)]) rev.push_back(v);
  r.nodes.reserve(rev.size());
  for (auto it = rev.rbegin(); it != rev.rend(); ++it) r.nodes.push_back(net.id_of(*it));
  for (std::size_t i = 0; i + 1 < r.nodes.size(); ++i) {
    const std::size_t ai = net.arc_between(r.nodes[i], r.nodes[i + 1]);
    const ArcMetrics m = arc_metrics(net, ai, model, cls);
    r.total_time_min += m.travel_time_min;
    r.total_cost_dollars += m.cost_dollars;
    r.total_miles += net.arc(ai).length_miles;
  }
  return r;
}

// Memoized one-to-all trees. Not thread-safe; solvers own one per run.
class DistCache {
 public:
  DistCache(const Network& net, const CostModel& model) : net_(&net), model_(model) {
    trees_.resize(net.node_count());
  }

  const SpTree& tree(NodeId source) const {
    auto& slot = trees_[static_cast<std::size_t>(net_->dense(source))];
    if (!slot) slot = std::make_unique<SpTree>(dijkstra(*net_, source));
    return *slot;
  }

  bool reachable(NodeId s, NodeId t) const { return miles(s, t) < SpTree::kInf; }

  double miles(NodeId s, NodeId t) const {
    return tree(s).dist_miles[static_cast<std::size_t>(net_->dense(t))];
  }

  double time_minutes(VehicleClass cls, NodeId s, NodeId t) const {
    return miles(s, t) * model_.pace(cls);
  }

  double cost(VehicleClass cls, NodeId s, NodeId t) const {
    return miles(s, t) * model_.rate_per_mile(cls);
  }

  std::vector<NodeId> path(NodeId s, NodeId t) const {
    if (s == t) return {s};
    const SpTree& tr = tree(s);
    const int d = net_->dense(t);
    if (tr.pred[static_cast<std::size_t>(d)] < 0)
      throw NoPathError("no path from " + std::to_string(s) + " to " + std::to_string(t));
    std::vector<int> rev;
    for (int v = d; v != -1; v = tr.pred[static_cast<std::size_t>(v)]) rev.push_back(v);
    std::vector<NodeId> out;
    out.reserve(rev.size());
    for (auto it = rev.rbegin(); it != rev.rend(); ++it) out.push_back(net_->id_of(*it));
    return out;
  }

  const Network& network() const { return *net_; }
  const CostModel& cost_model() const { return model_; }

 private:
  const Network* net_;
  CostModel model_;
  mutable std::vector<std::unique_ptr<SpTree>> trees_;
};

}  // namespace ctd
