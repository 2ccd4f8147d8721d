#include "flowpart/graph.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace flowpart {

namespace {

std::string describe(const Edge& e) {
  std::ostringstream os;
  os << "(" << e.from << " -> " << e.to << ", capacity " << e.capacity << ")";
  return os.str();
}

}  // namespace

void CapacitatedGraph::build_indexes() {
  const auto n = static_cast<std::size_t>(vertex_count_);
  const auto m = edges_.size();

  out_offset_.assign(n + 1, 0);
  in_offset_.assign(n + 1, 0);
  for (const Edge& e : edges_) {
    ++out_offset_[static_cast<std::size_t>(e.from) + 1];
    ++in_offset_[static_cast<std::size_t>(e.to) + 1];
  }
  for (std::size_t v = 0; v < n; ++v) {
    out_offset_[v + 1] += out_offset_[v];
    in_offset_[v + 1] += in_offset_[v];
  }

  out_ids_.resize(m);
  in_ids_.resize(m);
  std::vector<std::int64_t> out_pos(out_offset_.begin(), out_offset_.end() - 1);
  std::vector<std::int64_t> in_pos(in_offset_.begin(), in_offset_.end() - 1);
  // Edges are sorted by (from, to), so filling in edge order leaves the out
  // lists ordered by target and the in lists ordered by source.
  for (EdgeId e = 0; e < static_cast<EdgeId>(m); ++e) {
    const Edge& edge = edges_[static_cast<std::size_t>(e)];
    out_ids_[static_cast<std::size_t>(out_pos[static_cast<std::size_t>(edge.from)]++)] = e;
    in_ids_[static_cast<std::size_t>(in_pos[static_cast<std::size_t>(edge.to)]++)] = e;
  }

  arc_offset_.assign(n + 1, 0);
  arcs_.clear();
  arcs_.reserve(2 * m);
  for (std::size_t v = 0; v < n; ++v) {
    auto out = out_ids_.begin() + out_offset_[v];
    const auto out_end = out_ids_.begin() + out_offset_[v + 1];
    auto in = in_ids_.begin() + in_offset_[v];
    const auto in_end = in_ids_.begin() + in_offset_[v + 1];
    // Merge the two neighbor-ordered lists; forward arcs win ties so BFS
    // visits the cheapest representation first deterministically.
    while (out != out_end || in != in_end) {
      const VertexId out_nbr =
          out != out_end ? edges_[static_cast<std::size_t>(*out)].to
                         : std::numeric_limits<VertexId>::max();
      const VertexId in_nbr =
          in != in_end ? edges_[static_cast<std::size_t>(*in)].from
                       : std::numeric_limits<VertexId>::max();
      if (out_nbr <= in_nbr) {
        arcs_.push_back({out_nbr, *out, true});
        ++out;
      } else {
        arcs_.push_back({in_nbr, *in, false});
        ++in;
      }
    }
    arc_offset_[v + 1] = static_cast<std::int64_t>(arcs_.size());
  }
}

CapacitatedGraph build_graph(VertexId vertex_count, std::span<const Edge> edges) {
  if (vertex_count < 0) {
    throw Error(Errc::bad_config, "vertex_count must be non-negative");
  }
  std::vector<Edge> sorted;
  sorted.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.from < 0 || e.from >= vertex_count || e.to < 0 || e.to >= vertex_count) {
      throw Error(Errc::endpoint_out_of_range,
                  "edge endpoint out of range " + describe(e) + " with vertex_count " +
                      std::to_string(vertex_count));
    }
    if (e.from == e.to) {
      throw Error(Errc::self_loop, "self-loop rejected " + describe(e));
    }
    if (e.capacity <= 0) {
      throw Error(Errc::nonpositive_capacity, "capacity must be positive " + describe(e));
    }
    sorted.push_back(e);
  }

  std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });
  // Merge parallel edges by capacity summation.
  std::vector<Edge> merged;
  merged.reserve(sorted.size());
  for (const Edge& e : sorted) {
    if (!merged.empty() && merged.back().from == e.from && merged.back().to == e.to) {
      merged.back().capacity += e.capacity;
    } else {
      merged.push_back(e);
    }
  }

  CapacitatedGraph g;
  g.vertex_count_ = vertex_count;
  g.edges_ = std::move(merged);
  g.build_indexes();
  return g;
}

CapacitatedGraph build_graph(VertexId vertex_count, std::initializer_list<Edge> edges) {
  return build_graph(vertex_count, std::span<const Edge>(edges.begin(), edges.size()));
}

VertexId InducedSubgraph::local_of(VertexId original) const {
  const auto it = std::lower_bound(to_original.begin(), to_original.end(), original);
  if (it == to_original.end() || *it != original) return -1;
  return static_cast<VertexId>(it - to_original.begin());
}

InducedSubgraph induced_subgraph(const CapacitatedGraph& g, std::span<const VertexId> vertices) {
  if (vertices.empty()) {
    throw Error(Errc::empty_vertex_set, "induced_subgraph requires a non-empty vertex set");
  }
  std::vector<VertexId> ids(vertices.begin(), vertices.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.front() < 0 || ids.back() >= g.vertex_count()) {
    throw Error(Errc::vertex_out_of_range, "induced_subgraph vertex outside graph range");
  }

  std::vector<VertexId> local(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    local[static_cast<std::size_t>(ids[i])] = static_cast<VertexId>(i);
  }

  std::vector<Edge> kept;
  for (VertexId v : ids) {
    for (EdgeId e : g.out_edges(v)) {
      const Edge& edge = g.edge(e);
      const VertexId to_local = local[static_cast<std::size_t>(edge.to)];
      if (to_local >= 0) {
        kept.push_back({local[static_cast<std::size_t>(v)], to_local, edge.capacity});
      }
    }
  }

  InducedSubgraph sub;
  sub.graph = build_graph(static_cast<VertexId>(ids.size()), kept);
  sub.to_original = std::move(ids);
  return sub;
}

void write_edge_list(const CapacitatedGraph& g, std::ostream& out) {
  for (const Edge& e : g.edges()) {
    out << e.from << ' ' << e.to << ' ' << e.capacity << '\n';
  }
}

std::string to_edge_list(const CapacitatedGraph& g) {
  std::ostringstream os;
  write_edge_list(g, os);
  return os.str();
}

}  // namespace flowpart
