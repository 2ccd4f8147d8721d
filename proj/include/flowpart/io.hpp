#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "flowpart/graph.hpp"

namespace flowpart {

enum class IndexBase { automatic, zero, one };
enum class WeightMode {
  automatic,  // use the third column when present, default_capacity otherwise
  required,   // every edge line must carry a weight
  ignore,     // always use default_capacity
};

struct LoadOptions {
  WeightMode weights = WeightMode::automatic;
  Flow default_capacity = 1;
  IndexBase index_base = IndexBase::automatic;
  // Add the reverse of every edge that lacks one, with equal capacity. Meant
  // for repository datasets stored as undirected adjacency lists.
  bool symmetrize = false;
};

struct LoadReport {
  std::int64_t edge_lines = 0;           // parsed edge lines, before any merging
  std::int64_t self_loops_dropped = 0;   // u == v lines, skipped and counted
  std::int64_t rounded_weights = 0;      // lines whose weight needed rounding/clamping
  std::int64_t merged_edge_count = 0;    // distinct directed (u,v) after merging, before symmetrize
  std::int64_t undirected_pair_count = 0;  // distinct unordered {u,v}
  int resolved_base = 0;                 // 0 or 1; what IndexBase::automatic picked
  std::int64_t id_offset = 0;            // original id = internal id + id_offset
  bool matrix_market = false;
  bool symmetrized = false;
};

struct LoadedGraph {
  CapacitatedGraph graph;
  LoadReport report;
};

// Reads a whitespace-separated edge list: "u v" or "u v w" per line, '%' and
// '#' comment lines, and an optional MatrixMarket header (header line plus
// one dimension line, both skipped). Non-integer weights are rounded half-up
// and clamped to >= 1. Internal ids are dense and 0-based: internal = id -
// min observed id, so vertex_count = max - min + 1.
LoadedGraph load_edge_list(const std::string& path, const LoadOptions& options = {});
LoadedGraph read_edge_list(std::istream& in, const LoadOptions& options = {},
                           const std::string& name = "<stream>");

void save_edge_list(const CapacitatedGraph& g, const std::string& path);

}  // namespace flowpart
