#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace flowpart {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
using Flow = std::int64_t;

enum class Errc {
  self_loop,
  endpoint_out_of_range,
  nonpositive_capacity,
  empty_vertex_set,
  too_few_vertices,
  vertex_out_of_range,
  source_equals_sink,
  too_many_vertices,
  level_too_large,
  budget_count_mismatch,
  io_unreadable,
  parse_error,
  no_edges,
  missing_baseline_level,
  bad_config,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

struct Edge {
  VertexId from = 0;
  VertexId to = 0;
  Flow capacity = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// One traversable arc of the residual network: a forward arc over an original
// edge, or the backward arc that cancels flow on it.
struct ResidualArc {
  VertexId neighbor = 0;
  EdgeId edge = 0;
  bool forward = true;
};

// Directed graph with positive integer edge capacities. Immutable after
// construction; safe to share across threads. Edges are stored sorted by
// (from, to) with parallel edges merged by capacity summation, and self-loops
// are rejected.
class CapacitatedGraph {
 public:
  CapacitatedGraph() = default;

  VertexId vertex_count() const { return vertex_count_; }
  EdgeId edge_count() const { return static_cast<EdgeId>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }

  // Outgoing edge ids of v, ordered by target vertex id.
  std::span<const EdgeId> out_edges(VertexId v) const {
    return {out_ids_.data() + out_offset_[static_cast<std::size_t>(v)],
            out_ids_.data() + out_offset_[static_cast<std::size_t>(v) + 1]};
  }

  // Incoming edge ids of v, ordered by source vertex id.
  std::span<const EdgeId> in_edges(VertexId v) const {
    return {in_ids_.data() + in_offset_[static_cast<std::size_t>(v)],
            in_ids_.data() + in_offset_[static_cast<std::size_t>(v) + 1]};
  }

  // Forward and backward residual arcs leaving v, ordered by neighbor id
  // (forward before backward on ties). Shared topology for flow solvers;
  // residual capacities live in per-call state.
  std::span<const ResidualArc> residual_arcs(VertexId v) const {
    return {arcs_.data() + arc_offset_[static_cast<std::size_t>(v)],
            arcs_.data() + arc_offset_[static_cast<std::size_t>(v) + 1]};
  }

  EdgeId out_degree(VertexId v) const {
    return static_cast<EdgeId>(out_offset_[static_cast<std::size_t>(v) + 1] -
                               out_offset_[static_cast<std::size_t>(v)]);
  }

  bool has_vertex(VertexId v) const { return v >= 0 && v < vertex_count_; }

  friend bool operator==(const CapacitatedGraph& a, const CapacitatedGraph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

  friend CapacitatedGraph build_graph(VertexId vertex_count, std::span<const Edge> edges);

 private:
  void build_indexes();

  VertexId vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::int64_t> out_offset_{0};
  std::vector<EdgeId> out_ids_;
  std::vector<std::int64_t> in_offset_{0};
  std::vector<EdgeId> in_ids_;
  std::vector<std::int64_t> arc_offset_{0};
  std::vector<ResidualArc> arcs_;
};

// Validates endpoints and capacities, merges parallel edges, rejects
// self-loops. Throws Error with a specific Errc per violation.
CapacitatedGraph build_graph(VertexId vertex_count, std::span<const Edge> edges);
CapacitatedGraph build_graph(VertexId vertex_count, std::initializer_list<Edge> edges);

struct InducedSubgraph {
  CapacitatedGraph graph;
  // to_original[local] = vertex id in the parent graph; strictly increasing.
  std::vector<VertexId> to_original;

  // Local id of an original vertex, or -1 if not in the subgraph.
  VertexId local_of(VertexId original) const;
};

// Subgraph induced by a vertex set: keeps exactly the edges with both
// endpoints inside, capacities unchanged, vertices relabeled to 0..m-1 in
// ascending original order. Duplicate ids in `vertices` are ignored.
InducedSubgraph induced_subgraph(const CapacitatedGraph& g, std::span<const VertexId> vertices);

// Edge-list serialization: one "u v w" line per edge, 0-based ids, sorted by
// (u, v).
void write_edge_list(const CapacitatedGraph& g, std::ostream& out);
std::string to_edge_list(const CapacitatedGraph& g);

}  // namespace flowpart
