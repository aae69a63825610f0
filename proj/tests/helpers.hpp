#pragma once

#include <vector>

#include "ctd/detail/rng.hpp"
#include "ctd/graph.hpp"
#include "ctd/instance.hpp"

namespace ctd::testutil {

// Undirected edge helper: emits both arc directions.
inline void add_edge(std::vector<Arc>& arcs, NodeId a, NodeId b, double miles) {
  arcs.push_back({a, b, miles});
  arcs.push_back({b, a, miles});
}

inline Network line_network(int n, double miles_per_edge = 1.0) {
  std::vector<NodeId> nodes;
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i) nodes.push_back(i);
  for (int i = 0; i + 1 < n; ++i) add_edge(arcs, i, i + 1, miles_per_edge);
  return Network(nodes, arcs);
}

// rows x cols lattice, node id = r * cols + c.
inline Network grid_network(int rows, int cols, double miles_per_edge = 1.0) {
  std::vector<NodeId> nodes;
  std::vector<Arc> arcs;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const NodeId id = r * cols + c;
      nodes.push_back(id);
      if (c + 1 < cols) add_edge(arcs, id, id + 1, miles_per_edge);
      if (r + 1 < rows) add_edge(arcs, id, id + cols, miles_per_edge);
    }
  return Network(nodes, arcs);
}

// Directed random graph with bounded out-degree; lengths on a 1e-3 mile grid.
inline Network random_network(detail::Rng& rng, int n, int max_out_degree = 4) {
  std::vector<NodeId> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back(i);
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i) {
    const int deg = static_cast<int>(rng.uniform_int(1, max_out_degree));
    for (int d = 0; d < deg; ++d) {
      NodeId head = rng.uniform_int(0, n - 1);
      if (head == i) head = (head + 1) % n;
      bool dup = false;
      for (const auto& a : arcs)
        if (a.tail == i && a.head == head) dup = true;
      if (dup) continue;
      const double miles = static_cast<double>(rng.uniform_int(100, 5000)) / 1000.0;
      arcs.push_back({i, head, miles});
    }
  }
  return Network(nodes, arcs);
}

// Minimal instance around a given network; depot defaults to node 0.
inline Instance basic_instance(Network net, NodeId depot = 0) {
  Instance inst;
  inst.network = std::move(net);
  inst.depot = depot;
  return inst;
}

}  // namespace ctd::testutil
