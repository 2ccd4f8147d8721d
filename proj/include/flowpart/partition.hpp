#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flowpart/graph.hpp"

namespace flowpart {

enum class RunMode { serial, parallel };

struct KlOptions {
  // Upper bound on improvement passes; convergence normally happens earlier.
  int max_passes = 10;
};

struct Bipartition {
  std::vector<std::uint8_t> side;  // 0 or 1 per vertex; sizes differ by <= 1
  int cut_size = 0;                // undirected cut edges between the sides
  int initial_cut_size = 0;        // cut of the seeded random starting split
  std::vector<int> pass_cuts;      // cut after each pass; never increasing
};

// Kernighan-Lin bi-partitioning of the symmetrized, unweighted view of g:
// seeded random balanced start, then full passes (gain-ordered tentative
// swaps with locking, rollback to the best prefix) until a pass stops
// improving. Edge directions and capacities are ignored.
Bipartition kernighan_lin(const CapacitatedGraph& g, std::uint64_t seed,
                          const KlOptions& options = {});

struct Partitioning {
  int k = 1;      // 2^level
  int level = 0;
  std::vector<std::int32_t> part_of;           // partition id per vertex, in [0, k)
  std::vector<std::vector<VertexId>> members;  // ascending ids, disjoint cover of V
};

// Pass history of every bisection performed by recursive_partition, indexed
// by recursion node. Lets callers check balance and per-pass cut
// monotonicity at every level.
struct PartitionTrace {
  struct Split {
    int level = 0;  // depth of this bisection, 1 = root split
    std::size_t left_size = 0, right_size = 0;
    int initial_cut = 0;
    int final_cut = 0;
    std::vector<int> pass_cuts;
  };
  std::vector<Split> splits;
};

// k = 2^level partitions by recursive bisection; each part is split by
// kernighan_lin on its induced subgraph. Partition ids follow the binary
// recursion path (left = 0 bit), so they are stable under the seed.
// Sibling subtrees run as parallel tasks in RunMode::parallel with results
// identical to serial.
Partitioning recursive_partition(const CapacitatedGraph& g, int level, std::uint64_t seed,
                                 RunMode mode = RunMode::parallel,
                                 PartitionTrace* trace = nullptr);

// "vertex_id,partition_id" lines, one per vertex.
std::string partition_csv(const Partitioning& p);

}  // namespace flowpart
