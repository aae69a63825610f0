#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ctd/detail/rng.hpp"
#include "ctd/instance.hpp"
#include "ctd/route_enum.hpp"

namespace ctd {

enum class NetworkKind { Grid, RandomPlanar };
enum class DepotPlacement { Boundary, Center, Explicit };

// Synthetic-instance recipe. Defaults mirror the benchmark configuration:
// 32 sq-mi area, 200 orders, up to 1200 drivers, 30-minute willingness.
struct GenSpec {
  NetworkKind network_kind = NetworkKind::Grid;
  int grid_rows = 20;
  int grid_cols = 20;
  int node_count = 400;  // random-planar only
  double area_sq_miles = 32.0;
  DepotPlacement depot = DepotPlacement::Boundary;
  NodeId depot_node = 0;  // explicit placement only
  int pdo_count = 200;
  std::vector<double> delivery_deadlines = {720.0, 960.0, 1200.0};  // noon / 4 pm / 8 pm
  int spv_count = 1200;
  double spv_window_span = 0.0;  // 0 = direct trip time + willingness
  double detour_willingness = 30.0;
  double spv_earliest_lo = 0.0;
  double spv_earliest_hi = 600.0;
  std::uint64_t seed = 0;
  DvSpec dv_spec;
  CostParams params;

  void validate() const {
    const int nodes = network_kind == NetworkKind::Grid ? grid_rows * grid_cols : node_count;
    if (nodes < 2) throw std::invalid_argument("network needs at least two nodes");
    if (pdo_count < 0 || spv_count < 0) throw std::invalid_argument("counts must be non-negative");
    if (area_sq_miles <= 0) throw std::invalid_argument("area must be positive");
    if (pdo_count > 0 && delivery_deadlines.empty())
      throw std::invalid_argument("orders need at least one deadline choice");
  }
};

namespace detail {

inline double round_miles(double x) { return std::round(x * 1000.0) / 1000.0; }

struct Geometry {
  std::vector<NodeId> nodes;
  std::vector<Arc> arcs;
  std::vector<std::pair<double, double>> xy;  // per node, miles
};

inline Geometry make_grid(int rows, int cols, double area) {
  Geometry g;
  const double side = std::sqrt(area);
  const double dx = cols > 1 ? side / (cols - 1) : 0.0;
  const double dy = rows > 1 ? side / (rows - 1) : 0.0;
  const double ex = round_miles(dx), ey = round_miles(dy);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const NodeId id = static_cast<NodeId>(r) * cols + c;
      g.nodes.push_back(id);
      g.xy.push_back({c * dx, r * dy});
      if (c + 1 < cols) {
        g.arcs.push_back({id, id + 1, ex});
        g.arcs.push_back({id + 1, id, ex});
      }
      if (r + 1 < rows) {
        g.arcs.push_back({id, id + cols, ey});
        g.arcs.push_back({id + cols, id, ey});
      }
    }
  return g;
}

inline Geometry make_random_planar(ctd::detail::Rng& rng, int n, double area) {
  Geometry g;
  const double side = std::sqrt(area);
  constexpr int kGridRes = 1000;  // integer lattice keeps coordinates portable
  for (int i = 0; i < n; ++i) {
    g.nodes.push_back(i);
    const double x = static_cast<double>(rng.uniform_int(0, kGridRes)) / kGridRes * side;
    const double y = static_cast<double>(rng.uniform_int(0, kGridRes)) / kGridRes * side;
    g.xy.push_back({x, y});
  }
  auto dist = [&](int a, int b) {
    const double dx = g.xy[static_cast<std::size_t>(a)].first - g.xy[static_cast<std::size_t>(b)].first;
    const double dy = g.xy[static_cast<std::size_t>(a)].second - g.xy[static_cast<std::size_t>(b)].second;
    return std::sqrt(dx * dx + dy * dy);
  };
  std::set<std::pair<NodeId, NodeId>> edges;
  auto connect = [&](int a, int b) {
    if (a == b) return;
    const auto key = std::minmax<NodeId>(a, b);
    if (!edges.insert({key.first, key.second}).second) return;
    const double len = std::max(0.001, round_miles(dist(a, b)));
    g.arcs.push_back({a, b, len});
    g.arcs.push_back({b, a, len});
  };
  for (int i = 0; i + 1 < n; ++i) connect(i, i + 1);  // spanning chain keeps it strongly connected
  for (int i = 0; i < n; ++i) {
    // three nearest neighbors, ties by id
    std::vector<int> order;
    for (int j = 0; j < n; ++j)
      if (j != i) order.push_back(j);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const double da = dist(i, a), db = dist(i, b);
      if (da != db) return da < db;
      return a < b;
    });
    for (int k = 0; k < 3 && k < static_cast<int>(order.size()); ++k)
      connect(i, order[static_cast<std::size_t>(k)]);
  }
  return g;
}

inline NodeId place_depot(const GenSpec& spec, const Geometry& g) {
  if (spec.depot == DepotPlacement::Explicit) return spec.depot_node;
  double cx = 0.0, cy = 0.0;
  for (const auto& [x, y] : g.xy) {
    cx += x;
    cy += y;
  }
  cx /= static_cast<double>(g.xy.size());
  cy /= static_cast<double>(g.xy.size());
  NodeId best = g.nodes.front();
  double best_key = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto [x, y] = g.xy[i];
    // boundary: west-most node nearest the vertical midline of the area
    const double key = spec.depot == DepotPlacement::Boundary
                           ? x * 1e6 + std::abs(y - cy)
                           : std::hypot(x - cx, y - cy);
    if (key < best_key - 1e-12) {
      best_key = key;
      best = g.nodes[i];
    }
  }
  return best;
}

}  // namespace detail

// Deterministic synthetic instance: drop locations uniform over non-depot
// nodes, deadlines drawn from the menu, driver trips uniform over distinct
// node pairs.
inline Instance generate_instance(const GenSpec& spec) {
  spec.validate();
  detail::Rng rng(spec.seed);

  detail::Geometry geo = spec.network_kind == NetworkKind::Grid
                             ? detail::make_grid(spec.grid_rows, spec.grid_cols, spec.area_sq_miles)
                             : detail::make_random_planar(rng, spec.node_count, spec.area_sq_miles);
  Instance inst;
  inst.network = Network(geo.nodes, geo.arcs);
  inst.depot = detail::place_depot(spec, geo);
  if (!inst.network.has_node(inst.depot))
    throw std::invalid_argument("explicit depot node is not in the generated network");
  inst.dv_spec = spec.dv_spec;
  inst.params = spec.params;

  std::vector<NodeId> non_depot;
  for (NodeId n : inst.network.nodes())
    if (n != inst.depot) non_depot.push_back(n);
  if (spec.pdo_count > 0 && non_depot.empty())
    throw std::invalid_argument("no non-depot nodes available for orders");

  for (int i = 0; i < spec.pdo_count; ++i) {
    Pdo p;
    p.id = i;
    p.drop_node = rng.pick(non_depot);
    p.earliest_pickup = 0.0;  // orders are ready at day start
    p.latest_delivery = rng.pick(spec.delivery_deadlines);
    p.quantity = static_cast<int>(rng.uniform_int(1, 3));
    inst.pdos.push_back(p);
  }

  DistCache cache(inst.network, inst.params.cost_model);
  for (int i = 0; i < spec.spv_count; ++i) {
    Spv s;
    s.id = i;
    s.origin = rng.pick(inst.network.nodes());
    s.destination = rng.pick(inst.network.nodes());
    while (s.destination == s.origin) s.destination = rng.pick(inst.network.nodes());
    s.max_stops = static_cast<int>(rng.uniform_int(1, 4));
    s.detour_willingness_min = spec.detour_willingness;
    s.earliest_start =
        static_cast<double>(rng.uniform_int(static_cast<std::int64_t>(spec.spv_earliest_lo),
                                            static_cast<std::int64_t>(spec.spv_earliest_hi)));
    double span = spec.spv_window_span;
    if (span <= 0.0)
      span = cache.time_minutes(VehicleClass::Spv, s.origin, s.destination) + spec.detour_willingness;
    s.latest_arrival = std::ceil(s.earliest_start + span);
    inst.spvs.push_back(s);
  }

  inst.validate();
  return inst;
}

inline std::uint64_t network_hash(const Network& net) {
  detail::Fnv1a h;
  h.feed_i64(static_cast<std::int64_t>(net.node_count()));
  for (NodeId n : net.nodes()) h.feed_i64(n);
  for (const Arc& a : net.arcs()) {
    h.feed_i64(a.tail);
    h.feed_i64(a.head);
    h.feed_f64(a.length_miles);
  }
  return h.value();
}

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string fmt(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, p);
}

inline std::string fmt_miles(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

struct LineReader {
  std::istream& in;
  int line_no = 0;
  std::string current;

  bool next() {
    while (std::getline(in, current)) {
      ++line_no;
      if (!current.empty() && current.back() == '\r') current.pop_back();
      if (current.empty() || current[0] == '#') continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("line " + std::to_string(line_no) + ": " + what);
  }
};

template <typename T>
T parse_num(const std::string& tok, const LineReader& r) {
  T v{};
  const char* b = tok.data();
  const char* e = tok.data() + tok.size();
  auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc() || res.ptr != e)
    r.fail("expected a number, got '" + tok + "'");
  return v;
}

inline std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

inline void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
    f << content;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace detail

inline std::string instance_to_string(const Instance& inst) {
  using detail::fmt;
  std::ostringstream os;
  os << "ctd-instance v1\n";
  os << "[network]\n";
  for (NodeId n : inst.network.nodes()) os << "node " << n << "\n";
  for (const Arc& a : inst.network.arcs())
    os << "arc " << a.tail << " " << a.head << " " << detail::fmt_miles(a.length_miles) << "\n";
  os << "[fleet]\n";
  os << "dv " << inst.dv_spec.max_stops << " " << fmt(inst.dv_spec.fixed_cost) << " "
     << inst.dv_spec.fleet_limit << "\n";
  for (const Spv& s : inst.spvs)
    os << "spv " << s.id << " " << s.origin << " " << s.destination << " " << fmt(s.earliest_start)
       << " " << fmt(s.latest_arrival) << " " << s.max_stops << " "
       << fmt(s.detour_willingness_min) << "\n";
  os << "[demand]\n";
  for (const Pdo& p : inst.pdos)
    os << "pdo " << p.id << " " << p.drop_node << " " << fmt(p.earliest_pickup) << " "
       << fmt(p.latest_delivery) << " " << p.quantity << "\n";
  os << "[params]\n";
  os << "depot " << inst.depot << "\n";
  os << "spv_origins_at_depot " << (inst.spv_origins_at_depot ? 1 : 0) << "\n";
  os << "spv_speed " << fmt(inst.params.cost_model.spv_speed_mph) << "\n";
  os << "dv_speed " << fmt(inst.params.cost_model.dv_speed_mph) << "\n";
  os << "spv_rate " << fmt(inst.params.cost_model.spv_rate_per_mile) << "\n";
  os << "dv_rate " << fmt(inst.params.cost_model.dv_rate_per_mile) << "\n";
  os << "compensation " << fmt(inst.params.per_pdo_compensation) << "\n";
  os << "service_time " << fmt(inst.params.service_time_min) << "\n";
  return os.str();
}

inline Instance instance_from_stream(std::istream& in) {
  detail::LineReader r{in};
  if (!r.next() || r.current != "ctd-instance v1")
    throw ParseError("line 1: missing 'ctd-instance v1' header");

  std::vector<NodeId> nodes;
  std::vector<Arc> arcs;
  Instance inst;
  std::string section;
  bool have_depot = false;

  while (r.next()) {
    if (r.current[0] == '[') {
      section = r.current;
      continue;
    }
    const auto t = detail::tokens(r.current);
    const std::string& kw = t[0];
    auto want = [&](std::size_t n) {
      if (t.size() != n + 1) r.fail("'" + kw + "' expects " + std::to_string(n) + " fields");
    };
    if (section == "[network]") {
      if (kw == "node") {
        want(1);
        nodes.push_back(detail::parse_num<NodeId>(t[1], r));
      } else if (kw == "arc" || kw == "edge") {
        want(3);
        const NodeId a = detail::parse_num<NodeId>(t[1], r);
        const NodeId b = detail::parse_num<NodeId>(t[2], r);
        const double len = detail::parse_num<double>(t[3], r);
        if (!(len > 0)) r.fail("length must be positive");
        arcs.push_back({a, b, len});
        if (kw == "edge") arcs.push_back({b, a, len});  // undirected expands to two arcs
      } else {
        r.fail("unknown network entry '" + kw + "'");
      }
    } else if (section == "[fleet]") {
      if (kw == "dv") {
        want(3);
        inst.dv_spec.max_stops = detail::parse_num<int>(t[1], r);
        inst.dv_spec.fixed_cost = detail::parse_num<double>(t[2], r);
        inst.dv_spec.fleet_limit = detail::parse_num<long long>(t[3], r);
      } else if (kw == "spv") {
        want(7);
        Spv s;
        s.id = detail::parse_num<SpvId>(t[1], r);
        s.origin = detail::parse_num<NodeId>(t[2], r);
        s.destination = detail::parse_num<NodeId>(t[3], r);
        s.earliest_start = detail::parse_num<double>(t[4], r);
        s.latest_arrival = detail::parse_num<double>(t[5], r);
        s.max_stops = detail::parse_num<int>(t[6], r);
        s.detour_willingness_min = detail::parse_num<double>(t[7], r);
        inst.spvs.push_back(s);
      } else {
        r.fail("unknown fleet entry '" + kw + "'");
      }
    } else if (section == "[demand]") {
      if (kw == "pdo") {
        want(5);
        Pdo p;
        p.id = detail::parse_num<PdoId>(t[1], r);
        p.drop_node = detail::parse_num<NodeId>(t[2], r);
        p.earliest_pickup = detail::parse_num<double>(t[3], r);
        p.latest_delivery = detail::parse_num<double>(t[4], r);
        p.quantity = detail::parse_num<int>(t[5], r);
        inst.pdos.push_back(p);
      } else {
        r.fail("unknown demand entry '" + kw + "'");
      }
    } else if (section == "[params]") {
      want(1);
      if (kw == "depot") {
        inst.depot = detail::parse_num<NodeId>(t[1], r);
        have_depot = true;
      } else if (kw == "spv_origins_at_depot")
        inst.spv_origins_at_depot = detail::parse_num<int>(t[1], r) != 0;
      else if (kw == "spv_speed")
        inst.params.cost_model.spv_speed_mph = detail::parse_num<double>(t[1], r);
      else if (kw == "dv_speed")
        inst.params.cost_model.dv_speed_mph = detail::parse_num<double>(t[1], r);
      else if (kw == "spv_rate")
        inst.params.cost_model.spv_rate_per_mile = detail::parse_num<double>(t[1], r);
      else if (kw == "dv_rate")
        inst.params.cost_model.dv_rate_per_mile = detail::parse_num<double>(t[1], r);
      else if (kw == "compensation")
        inst.params.per_pdo_compensation = detail::parse_num<double>(t[1], r);
      else if (kw == "service_time")
        inst.params.service_time_min = detail::parse_num<double>(t[1], r);
      else
        r.fail("unknown parameter '" + kw + "'");
    } else {
      r.fail("entry outside any section");
    }
  }
  if (!have_depot) throw ParseError("missing 'depot' entry in [params]");
  try {
    inst.network = Network(nodes, arcs);
    inst.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("instance invalid: ") + e.what());
  }
  return inst;
}

inline void save_instance(const Instance& inst, const std::string& path) {
  detail::atomic_write(path, instance_to_string(inst));
}

inline Instance load_instance(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open instance file " + path);
  return instance_from_stream(f);
}

inline std::string solution_to_string(const Solution& sol) {
  using detail::fmt;
  std::ostringstream os;
  os << "ctd-solution v1\n";
  for (const auto& [sid, plan] : sol.spv_plans) {
    os << "spv_plan " << sid << " route";
    for (NodeId n : plan.route) os << " " << n;
    os << " served";
    for (PdoId p : plan.served_pdos) os << " " << p;
    os << " times";
    for (NodeId n : plan.route) os << " " << fmt(plan.stop_times.at(n));
    os << "\n";
  }
  for (const auto& plan : sol.dv_plans) {
    os << "dv_plan route";
    for (NodeId n : plan.stops) os << " " << n;
    os << " served";
    for (PdoId p : plan.served_pdos) os << " " << p;
    os << " times";
    for (double t : plan.stop_times) os << " " << fmt(t);
    os << "\n";
  }
  const CostBreakdown& b = sol.cost_breakdown;
  os << "cost " << fmt(b.spv_detour_cost) << " " << fmt(b.spv_pdo_compensation) << " "
     << fmt(b.dv_variable_cost) << " " << fmt(b.dv_fixed_cost) << " " << fmt(b.total) << " "
     << fmt(b.spv_vmt) << " " << fmt(b.dv_vmt) << "\n";
  return os.str();
}

inline Solution solution_from_stream(std::istream& in) {
  detail::LineReader r{in};
  if (!r.next() || r.current != "ctd-solution v1")
    throw ParseError("line 1: missing 'ctd-solution v1' header");
  Solution sol;
  while (r.next()) {
    const auto t = detail::tokens(r.current);
    std::size_t i = 0;
    auto section_list = [&](const std::string& name) {
      if (i >= t.size() || t[i] != name) r.fail("expected '" + name + "' list");
      ++i;
      std::vector<std::string> out;
      while (i < t.size() && t[i] != "served" && t[i] != "times") out.push_back(t[i++]);
      return out;
    };
    if (t[0] == "spv_plan") {
      if (t.size() < 4) r.fail("malformed spv_plan");
      SpvPlan plan;
      const SpvId sid = detail::parse_num<SpvId>(t[1], r);
      i = 2;
      for (const auto& s : section_list("route")) plan.route.push_back(detail::parse_num<NodeId>(s, r));
      for (const auto& s : section_list("served"))
        plan.served_pdos.push_back(detail::parse_num<PdoId>(s, r));
      if (i >= t.size() || t[i] != "times") r.fail("expected 'times' list");
      ++i;
      std::size_t n = 0;
      while (i < t.size()) {
        if (n >= plan.route.size()) r.fail("more times than route nodes");
        plan.stop_times[plan.route[n++]] = detail::parse_num<double>(t[i++], r);
      }
      sol.spv_plans[sid] = std::move(plan);
    } else if (t[0] == "dv_plan") {
      DvPlan plan;
      i = 1;
      for (const auto& s : section_list("route")) plan.stops.push_back(detail::parse_num<NodeId>(s, r));
      for (const auto& s : section_list("served"))
        plan.served_pdos.push_back(detail::parse_num<PdoId>(s, r));
      if (i >= t.size() || t[i] != "times") r.fail("expected 'times' list");
      ++i;
      while (i < t.size()) plan.stop_times.push_back(detail::parse_num<double>(t[i++], r));
      sol.dv_plans.push_back(std::move(plan));
    } else if (t[0] == "cost") {
      if (t.size() != 8) r.fail("cost expects 7 fields");
      CostBreakdown b;
      b.spv_detour_cost = detail::parse_num<double>(t[1], r);
      b.spv_pdo_compensation = detail::parse_num<double>(t[2], r);
      b.dv_variable_cost = detail::parse_num<double>(t[3], r);
      b.dv_fixed_cost = detail::parse_num<double>(t[4], r);
      b.total = detail::parse_num<double>(t[5], r);
      b.spv_vmt = detail::parse_num<double>(t[6], r);
      b.dv_vmt = detail::parse_num<double>(t[7], r);
      sol.cost_breakdown = b;
    } else {
      r.fail("unknown solution entry '" + t[0] + "'");
    }
  }
  return sol;
}

inline void save_solution(const Solution& sol, const std::string& path) {
  detail::atomic_write(path, solution_to_string(sol));
}

inline Solution load_solution(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open solution file " + path);
  return solution_from_stream(f);
}

// Candidate routes persisted offline, keyed by network fingerprint, driver id
// and travel budget.
struct RouteCacheEntry {
  double budget = 0.0;
  std::vector<CandidateRoute> routes;  // null route first, as generated
};

struct RouteCache {
  std::uint64_t network = 0;
  std::map<SpvId, RouteCacheEntry> per_spv;
};

inline std::string route_cache_to_string(const RouteCache& cache) {
  using detail::fmt;
  std::ostringstream os;
  os << "ctd-routes v1\n";
  os << "network " << cache.network << "\n";
  for (const auto& [sid, entry] : cache.per_spv) {
    os << "spv " << sid << " " << fmt(entry.budget) << " " << entry.routes.size() << "\n";
    for (const auto& rt : entry.routes) {
      os << "route " << (rt.is_null_route ? 1 : 0) << " " << fmt(rt.travel_time_min) << " "
         << fmt(rt.detour_cost) << " " << rt.path.size();
      for (NodeId n : rt.path) os << " " << n;
      os << " " << rt.servable.size();
      for (PdoId p : rt.servable) os << " " << p;
      os << "\n";
    }
  }
  return os.str();
}

inline RouteCache route_cache_from_stream(std::istream& in) {
  detail::LineReader r{in};
  if (!r.next() || r.current != "ctd-routes v1")
    throw ParseError("line 1: missing 'ctd-routes v1' header");
  RouteCache cache;
  SpvId cur = 0;
  bool have_spv = false;
  while (r.next()) {
    const auto t = detail::tokens(r.current);
    if (t[0] == "network") {
      if (t.size() != 2) r.fail("network expects 1 field");
      cache.network = detail::parse_num<std::uint64_t>(t[1], r);
    } else if (t[0] == "spv") {
      if (t.size() != 4) r.fail("spv expects 3 fields");
      cur = detail::parse_num<SpvId>(t[1], r);
      cache.per_spv[cur].budget = detail::parse_num<double>(t[2], r);
      have_spv = true;
    } else if (t[0] == "route") {
      if (!have_spv) r.fail("route before any spv entry");
      if (t.size() < 5) r.fail("malformed route entry");
      CandidateRoute rt;
      rt.spv_id = cur;
      rt.is_null_route = detail::parse_num<int>(t[1], r) != 0;
      rt.travel_time_min = detail::parse_num<double>(t[2], r);
      rt.detour_cost = detail::parse_num<double>(t[3], r);
      const auto npath = detail::parse_num<std::size_t>(t[4], r);
      std::size_t i = 5;
      for (std::size_t k = 0; k < npath; ++k) {
        if (i >= t.size()) r.fail("truncated path");
        rt.path.push_back(detail::parse_num<NodeId>(t[i++], r));
      }
      if (i >= t.size()) r.fail("missing servable count");
      const auto nserv = detail::parse_num<std::size_t>(t[i++], r);
      for (std::size_t k = 0; k < nserv; ++k) {
        if (i >= t.size()) r.fail("truncated servable list");
        rt.servable.push_back(detail::parse_num<PdoId>(t[i++], r));
      }
      cache.per_spv[cur].routes.push_back(std::move(rt));
    } else {
      r.fail("unknown route-cache entry '" + t[0] + "'");
    }
  }
  return cache;
}

inline void save_route_cache(const RouteCache& cache, const std::string& path) {
  detail::atomic_write(path, route_cache_to_string(cache));
}

inline RouteCache load_route_cache(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open route cache " + path);
  return route_cache_from_stream(f);
}

}  // namespace ctd
