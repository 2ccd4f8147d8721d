#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flowpart/graph.hpp"

namespace flowpart {

struct FlowResult {
  Flow value = 0;
  std::vector<Flow> edge_flows;  // indexed by EdgeId of the solved graph
  // Augmenting iterations used; bounded by |V|*|E| for BFS-shortest paths.
  std::int64_t augmenting_paths = 0;

  friend bool operator==(const FlowResult&, const FlowResult&) = default;
};

// Maximum s-t flow via BFS augmenting paths on the residual network. The
// residual state is allocated per call, so concurrent calls on one shared
// graph are safe. BFS expands neighbors in ascending vertex id, making the
// returned edge flows (not just the value) deterministic. Returns value 0
// when t is unreachable.
FlowResult edmonds_karp(const CapacitatedGraph& g, VertexId s, VertexId t);

// Exhaustive minimum s-t cut: min over all S with s in S, t not in S of the
// capacity from S to its complement. Test oracle; requires <= 20 vertices.
Flow min_cut_oracle(const CapacitatedGraph& g, VertexId s, VertexId t);

// Checks the capacity constraint on every edge, conservation at every vertex
// other than s and t, and that value matches the net outflow of s and the
// net inflow of t. Returns nullopt when valid, otherwise a description of
// the first violation found.
std::optional<std::string> validate_flow(const CapacitatedGraph& g, VertexId s, VertexId t,
                                         const FlowResult& f);

}  // namespace flowpart
