#pragma once

#include <cstdint>
#include <vector>

#include "flowpart/graph.hpp"

namespace flowpart {

struct GeneratorConfig {
  std::int32_t clusters = 1;
  std::int32_t nodes_per_cluster = 1;
  double inp = 0.0;   // within-cluster edge probability
  double outp = 0.0;  // between-cluster edge probability
  Flow weight_min = 1;
  Flow weight_max = 10;
  std::uint64_t seed = 0;
};

struct GeneratedGraph {
  CapacitatedGraph graph;
  std::vector<std::int32_t> labels;  // planted cluster per vertex
};

// Clustered random graph: every unordered vertex pair becomes an edge with
// probability inp (same planted cluster) or outp (different clusters); each
// realized pair gets one uniform weight from [weight_min, weight_max] and is
// materialized as a directed edge in both directions with that capacity.
// Topology and weights draw from separate substreams of `seed`.
GeneratedGraph generate(const GeneratorConfig& cfg);

}  // namespace flowpart
