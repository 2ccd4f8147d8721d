#pragma once

// Test-only graph builders and independent oracles. Everything here computes
// expectations by brute force or direct definition, never through the code
// paths under test.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "flowpart/graph.hpp"
#include "flowpart/rng.hpp"

namespace flowpart::testing {

// Directed random graph: each ordered pair (u, v), u != v, becomes an edge
// with probability p and a capacity in [1, max_capacity].
inline CapacitatedGraph random_graph(std::uint64_t seed, VertexId n, double p,
                                     Flow max_capacity) {
  Rng rng(detail::mix64(seed));
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = 0; v < n; ++v) {
      if (u == v) continue;
      if (rng.bernoulli(p)) {
        edges.push_back({u, v, 1 + static_cast<Flow>(rng.bounded(static_cast<std::uint64_t>(max_capacity)))});
      }
    }
  }
  return build_graph(n, edges);
}

// Undirected clique on [first, first + size) with symmetric directed edges.
inline void add_clique(std::vector<Edge>& edges, VertexId first, VertexId size, Flow capacity) {
  for (VertexId a = first; a < first + size; ++a) {
    for (VertexId b = a + 1; b < first + size; ++b) {
      edges.push_back({a, b, capacity});
      edges.push_back({b, a, capacity});
    }
  }
}

inline void add_undirected(std::vector<Edge>& edges, VertexId a, VertexId b, Flow capacity) {
  edges.push_back({a, b, capacity});
  edges.push_back({b, a, capacity});
}

// Two triangles 0-1-2 and 3-4-5 joined by the undirected edge 2-3.
inline CapacitatedGraph two_triangles_bridge() {
  std::vector<Edge> edges;
  add_clique(edges, 0, 3, 1);
  add_clique(edges, 3, 3, 1);
  add_undirected(edges, 2, 3, 1);
  return build_graph(6, edges);
}

// Undirected path 0-1-2-3.
inline CapacitatedGraph path4() {
  std::vector<Edge> edges;
  add_undirected(edges, 0, 1, 1);
  add_undirected(edges, 1, 2, 1);
  add_undirected(edges, 2, 3, 1);
  return build_graph(4, edges);
}

// Brute-force induced edge set: edges of g with both endpoints in the set,
// in original ids.
inline std::vector<Edge> filter_edges(const CapacitatedGraph& g,
                                      const std::vector<VertexId>& vertices) {
  std::set<VertexId> inside(vertices.begin(), vertices.end());
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (inside.count(e.from) && inside.count(e.to)) kept.push_back(e);
  }
  return kept;
}

// Number of undirected cut edges between side-0 and side-1 vertices,
// ignoring weights and directions.
inline int undirected_cut(const CapacitatedGraph& g, const std::vector<std::uint8_t>& side) {
  std::set<std::pair<VertexId, VertexId>> pairs;
  for (const Edge& e : g.edges()) {
    pairs.insert({std::min(e.from, e.to), std::max(e.from, e.to)});
  }
  int cut = 0;
  for (const auto& [a, b] : pairs) {
    if (side[static_cast<std::size_t>(a)] != side[static_cast<std::size_t>(b)]) ++cut;
  }
  return cut;
}

// Exhaustive minimum over all balanced bipartitions; n <= 20 or so.
inline int best_balanced_cut(const CapacitatedGraph& g) {
  const VertexId n = g.vertex_count();
  const VertexId size0 = n / 2;  // checking both orientations is redundant
  int best = std::numeric_limits<int>::max();
  std::vector<std::uint8_t> side(static_cast<std::size_t>(n));
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != size0) continue;
    for (VertexId v = 0; v < n; ++v) side[static_cast<std::size_t>(v)] = (mask >> v) & 1u;
    best = std::min(best, undirected_cut(g, side));
  }
  return best;
}

// Supernode arcs by definitional scan: (a, b) present iff some edge crosses
// from partition a to partition b.
inline std::set<std::pair<int, int>> brute_force_superarcs(const CapacitatedGraph& g,
                                                           const std::vector<std::int32_t>& part_of) {
  std::set<std::pair<int, int>> arcs;
  for (const Edge& e : g.edges()) {
    const int a = part_of[static_cast<std::size_t>(e.from)];
    const int b = part_of[static_cast<std::size_t>(e.to)];
    if (a != b) arcs.insert({a, b});
  }
  return arcs;
}

}  // namespace flowpart::testing
