#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flowpart/graph.hpp"
#include "flowpart/partition.hpp"

namespace flowpart {

// Budget of a single-vertex partition: one vertex relays flow without an
// internal bottleneck, so it never constrains a path by itself.
inline constexpr Flow kUnboundedBudget = std::numeric_limits<Flow>::max();

// Condensed k-node graph: one supernode per partition, an uncapacitated arc
// a->b wherever some original edge crosses from partition a to partition b.
// Flow through a supernode is limited only by its remaining budget; budget-0
// supernodes are removed from path search.
class SuperGraph {
 public:
  SuperGraph(int k, std::vector<Flow> budgets, std::vector<std::uint8_t> matrix);

  int k() const { return k_; }
  Flow budget(int node) const { return budgets_[static_cast<std::size_t>(node)]; }
  bool removed(int node) const { return removed_[static_cast<std::size_t>(node)]; }
  bool arc(int a, int b) const {
    return matrix_[static_cast<std::size_t>(a) * static_cast<std::size_t>(k_) +
                   static_cast<std::size_t>(b)] != 0;
  }
  std::span<const std::int32_t> neighbors(int node) const {
    return arcs_[static_cast<std::size_t>(node)];
  }

  // Subtracts mu from every finite budget along the path and removes nodes
  // whose budget reaches zero.
  void reduce_along(std::span<const int> path, Flow mu);

 private:
  int k_ = 0;
  std::vector<Flow> budgets_;
  std::vector<std::uint8_t> removed_;
  std::vector<std::uint8_t> matrix_;              // k*k adjacency
  std::vector<std::vector<std::int32_t>> arcs_;   // ascending neighbor lists
};

SuperGraph build_supergraph(const CapacitatedGraph& g, const Partitioning& p,
                            std::span<const Flow> budgets);

// Hop-count shortest directed path over non-removed supernodes, BFS with
// ascending-id expansion. nullopt when `to` is unreachable.
std::optional<std::vector<int>> shortest_superpath(const SuperGraph& sg, int from, int to);

enum class HeuristicBranch { same_cluster, cross_cluster };

struct SuperPathStep {
  std::vector<int> path;  // supernode ids from source partition to sink partition
  Flow mu = 0;

  friend bool operator==(const SuperPathStep&, const SuperPathStep&) = default;
};

struct HeuristicResult {
  Flow value = 0;
  HeuristicBranch branch = HeuristicBranch::same_cluster;
  int level = 0;
  int k = 1;
  std::uint64_t seed = 0;
  int source_partition = 0;
  int sink_partition = 0;
  // Cross-cluster branch only: per-partition budgets before assembly
  // (kUnboundedBudget for singleton partitions) and the augmenting
  // supernode paths taken.
  std::vector<Flow> initial_budgets;
  std::vector<SuperPathStep> steps;
  // True when a path consisted solely of unbounded supernodes; its flow is
  // then the smallest capacity leaving the source vertex, a documented
  // fallback for a case the supernode model leaves unconstrained.
  bool unbounded_fallback_used = false;

  friend bool operator==(const HeuristicResult&, const HeuristicResult&) = default;
};

// Partition-based approximate maximum flow. Partitions g into 2^level parts;
// if s and t share a part, returns the exact flow inside that part's induced
// subgraph. Otherwise estimates per-partition budgets with internal
// max-flows between seeded sample vertices (s resp. t pinned in their own
// partitions), then pushes flow across the supernode graph along shortest
// paths until the source and sink partitions disconnect.
HeuristicResult heuristic_max_flow(const CapacitatedGraph& g, VertexId s, VertexId t, int level,
                                   std::uint64_t seed, RunMode mode = RunMode::parallel);

// Budget vector used by the cross-cluster branch: for the partition holding
// s, max flow from s to a sampled other member; for t's partition, from a
// sampled member to t; elsewhere between two distinct sampled members.
// Partitions that cannot route between their samples get budget 0;
// singletons get kUnboundedBudget. Entry r draws from an independent
// substream keyed by r, so the parallel loop is schedule-invariant.
std::vector<Flow> partition_flow_budgets(const CapacitatedGraph& g, const Partitioning& p,
                                         VertexId s, VertexId t, std::uint64_t seed,
                                         RunMode mode = RunMode::parallel);

// Key=value text record including the path trace; one line per key, stable
// field order, suitable for logs and golden tests.
std::string heuristic_record(const HeuristicResult& r);

}  // namespace flowpart
