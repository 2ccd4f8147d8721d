#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "flowpart/graph.hpp"
#include "flowpart/io.hpp"
#include "flowpart/partition.hpp"

namespace flowpart {

inline constexpr const char* kCsvSchema = "#flowpart-csv-v1";

// One benchmark observation: both algorithms run on the same graph and
// endpoint pair, timed independently around the algorithm call only.
struct ExperimentRecord {
  std::string experiment;  // scaling | levels | datasets
  std::string dataset;     // dataset name, or "-" for generated graphs
  std::int64_t nodes = 0;
  std::int64_t edges = 0;  // directed edges of the graph as solved
  double inp = 0.0;
  double outp = 0.0;
  std::int32_t clusters = 0;  // planted clusters (0 for datasets)
  int level = 0;
  int k = 1;
  VertexId source = 0;
  VertexId sink = 0;
  Flow exact_value = 0;
  Flow heuristic_value = 0;
  double exact_seconds = 0.0;
  double heuristic_seconds = 0.0;
  std::uint64_t seed = 0;
  int rep = 0;
  std::string policy;  // endpoint selection policy id
  std::string notes;   // semicolon-separated key=value flags (loader policy etc.)

  friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

void write_csv(std::ostream& out, std::span<const ExperimentRecord> records);
std::string to_csv(std::span<const ExperimentRecord> records);
std::vector<ExperimentRecord> parse_csv(std::istream& in);

struct ScalingConfig {
  std::vector<std::int64_t> node_counts;
  double inp = 0.01;
  double outp = 0.005;
  std::int32_t clusters = 8;
  int level = 3;
  int reps = 1;
  std::uint64_t seed = 0;
  // Timing runs stay sequential by default so measurements do not contend;
  // parallel_reps trades timing fidelity for throughput.
  bool parallel_reps = false;
};

// For each node count and repetition: generate a clustered graph (node count
// rounded down to a multiple of `clusters`), sample s and t from distinct
// planted clusters, then time edmonds_karp and heuristic_max_flow on the
// same instance.
std::vector<ExperimentRecord> run_scaling_sweep(const ScalingConfig& config);

struct LevelConfig {
  std::vector<std::int64_t> node_counts;
  std::vector<int> levels;  // must contain 0, the ratio baseline
  double inp = 0.01;
  double outp = 0.005;
  std::int32_t clusters = 8;
  int reps = 1;
  std::uint64_t seed = 0;
  bool parallel_reps = false;
};

struct LevelRatioRow {
  std::int64_t nodes = 0;
  int level = 0;
  double median_seconds = 0.0;
  double ratio_to_baseline = 1.0;  // median(level) / median(level 0)
  int samples = 0;
};

struct LevelSweepResult {
  std::vector<ExperimentRecord> records;
  std::vector<LevelRatioRow> ratios;
};

// Heuristic runtime per level on one shared graph per (node count, rep),
// with the same endpoints across levels. Levels with 2^l greater than the
// node count are skipped. Throws when `levels` lacks the 0 baseline.
LevelSweepResult run_level_sweep(const LevelConfig& config);

// Median per-level runtimes and their ratio to the level-0 baseline;
// separated from run_level_sweep so the aggregation is testable on synthetic
// records.
std::vector<LevelRatioRow> level_ratio_table(std::span<const ExperimentRecord> records);

struct DatasetConfig {
  std::vector<std::string> paths;
  int level = 3;
  int reps = 1;
  std::uint64_t seed = 0;
  LoadOptions load{.weights = WeightMode::automatic,
                   .default_capacity = 1,
                   .index_base = IndexBase::automatic,
                   .symmetrize = true};
  int top_degree_pool = 20;
};

// Loads each dataset file, reports its merged node/edge counts (flagged
// against the published counts when the file matches a known benchmark
// dataset), samples endpoints among the highest-degree vertices, and times
// both algorithms once per repetition.
std::vector<ExperimentRecord> run_dataset_bench(const DatasetConfig& config);

// Published node/edge counts of the brain connectivity benchmark datasets
// this harness targets (networkrepository.com). Edge counts are distinct
// directed pairs after merging duplicates, before any symmetrization.
struct DatasetCounts {
  const char* name;
  std::int64_t nodes;
  std::int64_t edges;
};
std::span<const DatasetCounts> known_dataset_counts();

// The `count` vertices with the highest out-degree; ties broken by lower id.
std::vector<VertexId> top_degree_vertices(const CapacitatedGraph& g, int count);

// Distinct s,t drawn uniformly from the top-degree pool.
std::pair<VertexId, VertexId> sample_endpoints_top_degree(const CapacitatedGraph& g,
                                                          int pool_size, std::uint64_t seed,
                                                          std::uint64_t index);

// s uniform over all vertices, t uniform over vertices in a different
// planted cluster. Requires at least two distinct labels.
std::pair<VertexId, VertexId> sample_endpoints_distinct_clusters(
    std::span<const std::int32_t> labels, std::uint64_t seed, std::uint64_t index);

double median(std::vector<double> values);

}  // namespace flowpart
