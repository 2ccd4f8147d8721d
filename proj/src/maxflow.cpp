#include "flowpart/maxflow.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace flowpart {

namespace {

void check_endpoints(const CapacitatedGraph& g, VertexId s, VertexId t) {
  if (!g.has_vertex(s) || !g.has_vertex(t)) {
    throw Error(Errc::vertex_out_of_range, "source or sink outside vertex range");
  }
  if (s == t) {
    throw Error(Errc::source_equals_sink, "source and sink must differ");
  }
}

}  // namespace

FlowResult edmonds_karp(const CapacitatedGraph& g, VertexId s, VertexId t) {
  check_endpoints(g, s, t);

  const auto n = static_cast<std::size_t>(g.vertex_count());
  const auto m = static_cast<std::size_t>(g.edge_count());

  // Residual capacities are derived from per-edge flow: forward residual is
  // capacity - flow, backward residual is flow itself.
  FlowResult result;
  result.edge_flows.assign(m, 0);

  struct ParentArc {
    EdgeId edge = -1;
    VertexId vertex = -1;
    bool forward = true;
  };
  std::vector<ParentArc> parent(n);
  std::vector<std::uint8_t> visited(n, 0);
  std::vector<VertexId> queue(n);

  const std::int64_t iteration_bound =
      static_cast<std::int64_t>(n) * static_cast<std::int64_t>(m) + 1;

  while (true) {
    std::fill(visited.begin(), visited.end(), 0);
    std::size_t head = 0, tail = 0;
    queue[tail++] = s;
    visited[static_cast<std::size_t>(s)] = 1;
    bool reached = false;
    while (head < tail && !reached) {
      const VertexId u = queue[head++];
      for (const ResidualArc& arc : g.residual_arcs(u)) {
        if (visited[static_cast<std::size_t>(arc.neighbor)]) continue;
        const Flow flow = result.edge_flows[static_cast<std::size_t>(arc.edge)];
        const Flow residual = arc.forward ? g.edge(arc.edge).capacity - flow : flow;
        if (residual <= 0) continue;
        visited[static_cast<std::size_t>(arc.neighbor)] = 1;
        parent[static_cast<std::size_t>(arc.neighbor)] = {arc.edge, u, arc.forward};
        if (arc.neighbor == t) {
          reached = true;
          break;
        }
        queue[tail++] = arc.neighbor;
      }
    }
    if (!reached) break;

    Flow bottleneck = std::numeric_limits<Flow>::max();
    for (VertexId v = t; v != s;) {
      const ParentArc& p = parent[static_cast<std::size_t>(v)];
      const Flow flow = result.edge_flows[static_cast<std::size_t>(p.edge)];
      const Flow residual = p.forward ? g.edge(p.edge).capacity - flow : flow;
      bottleneck = std::min(bottleneck, residual);
      v = p.vertex;
    }
    for (VertexId v = t; v != s;) {
      const ParentArc& p = parent[static_cast<std::size_t>(v)];
      result.edge_flows[static_cast<std::size_t>(p.edge)] += p.forward ? bottleneck : -bottleneck;
      v = p.vertex;
    }
    result.value += bottleneck;
    ++result.augmenting_paths;
    if (result.augmenting_paths > iteration_bound) {
      throw Error(Errc::bad_config, "augmenting iterations exceeded |V||E| bound");
    }
  }

  return result;
}

Flow min_cut_oracle(const CapacitatedGraph& g, VertexId s, VertexId t) {
  check_endpoints(g, s, t);
  const VertexId n = g.vertex_count();
  if (n > 20) {
    throw Error(Errc::too_many_vertices, "min_cut_oracle enumerates subsets; limit is 20 vertices");
  }

  // Enumerate subsets of the vertices other than s and t; s is always on the
  // source side, t never.
  std::vector<VertexId> free;
  for (VertexId v = 0; v < n; ++v) {
    if (v != s && v != t) free.push_back(v);
  }

  Flow best = std::numeric_limits<Flow>::max();
  const std::uint32_t subsets = 1u << free.size();
  std::vector<std::uint8_t> in_source_side(static_cast<std::size_t>(n), 0);
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    std::fill(in_source_side.begin(), in_source_side.end(), 0);
    in_source_side[static_cast<std::size_t>(s)] = 1;
    for (std::size_t i = 0; i < free.size(); ++i) {
      if (mask & (1u << i)) in_source_side[static_cast<std::size_t>(free[i])] = 1;
    }
    Flow cut = 0;
    for (const Edge& e : g.edges()) {
      if (in_source_side[static_cast<std::size_t>(e.from)] &&
          !in_source_side[static_cast<std::size_t>(e.to)]) {
        cut += e.capacity;
      }
    }
    best = std::min(best, cut);
  }
  return best;
}

std::optional<std::string> validate_flow(const CapacitatedGraph& g, VertexId s, VertexId t,
                                         const FlowResult& f) {
  check_endpoints(g, s, t);
  if (f.edge_flows.size() != static_cast<std::size_t>(g.edge_count())) {
    return "edge_flows size " + std::to_string(f.edge_flows.size()) + " does not match edge count " +
           std::to_string(g.edge_count());
  }

  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    const Flow flow = f.edge_flows[static_cast<std::size_t>(e)];
    if (flow < 0 || flow > edge.capacity) {
      std::ostringstream os;
      os << "capacity violated on edge " << e << " (" << edge.from << " -> " << edge.to
         << "): flow " << flow << " outside [0, " << edge.capacity << "]";
      return os.str();
    }
  }

  std::vector<Flow> net_out(static_cast<std::size_t>(g.vertex_count()), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    const Flow flow = f.edge_flows[static_cast<std::size_t>(e)];
    net_out[static_cast<std::size_t>(edge.from)] += flow;
    net_out[static_cast<std::size_t>(edge.to)] -= flow;
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (v == s || v == t) continue;
    if (net_out[static_cast<std::size_t>(v)] != 0) {
      std::ostringstream os;
      os << "conservation violated at vertex " << v << ": net outflow "
         << net_out[static_cast<std::size_t>(v)];
      return os.str();
    }
  }
  if (net_out[static_cast<std::size_t>(s)] != f.value) {
    std::ostringstream os;
    os << "value mismatch at source: net outflow " << net_out[static_cast<std::size_t>(s)]
       << " != value " << f.value;
    return os.str();
  }
  if (net_out[static_cast<std::size_t>(t)] != -f.value) {
    std::ostringstream os;
    os << "value mismatch at sink: net inflow " << -net_out[static_cast<std::size_t>(t)]
       << " != value " << f.value;
    return os.str();
  }
  return std::nullopt;
}

}  // namespace flowpart
