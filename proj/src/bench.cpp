#include "flowpart/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <map>
#include <ostream>
#include <sstream>

#include "flowpart/generator.hpp"
#include "flowpart/heuristic.hpp"
#include "flowpart/maxflow.hpp"
#include "flowpart/rng.hpp"

namespace flowpart {

namespace {

constexpr const char* kCsvColumns =
    "experiment,dataset,nodes,edges,inp,outp,clusters,level,k,source,sink,exact_value,"
    "heuristic_value,exact_seconds,heuristic_seconds,seed,rep,policy,notes";

std::uint64_t instance_seed(std::uint64_t master, std::uint64_t config_idx, std::uint64_t rep) {
  return detail::mix64(detail::mix64(master ^ 0xA0761D6478BD642Full * (config_idx + 1)) ^
                       0xE7037ED1A0B428DBull * (rep + 1));
}

template <typename F>
double time_seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Shortest decimal that round-trips; CSV stays lossless for doubles.
std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string sanitize_field(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

void validate_common(double inp, double outp, std::int32_t clusters, int level, int reps) {
  if (!(inp >= 0.0 && inp <= 1.0) || !(outp >= 0.0 && outp <= 1.0)) {
    throw Error(Errc::bad_config, "edge probabilities must lie in [0, 1]");
  }
  if (clusters < 1) throw Error(Errc::bad_config, "clusters must be >= 1");
  if (level < 0) throw Error(Errc::bad_config, "level must be >= 0");
  if (reps < 1) throw Error(Errc::bad_config, "reps must be >= 1");
}

struct GeneratedInstance {
  GeneratedGraph gen;
  VertexId source = 0;
  VertexId sink = 0;
};

GeneratedInstance make_instance(std::int64_t nodes, std::int32_t clusters, double inp,
                                double outp, std::uint64_t seed) {
  if (nodes < clusters) {
    throw Error(Errc::bad_config, "node count below cluster count");
  }
  GeneratorConfig gc;
  gc.clusters = clusters;
  gc.nodes_per_cluster = static_cast<std::int32_t>(nodes / clusters);
  gc.inp = inp;
  gc.outp = outp;
  gc.seed = seed;
  GeneratedInstance inst;
  inst.gen = generate(gc);
  std::tie(inst.source, inst.sink) =
      sample_endpoints_distinct_clusters(inst.gen.labels, seed, 0);
  return inst;
}

ExperimentRecord measure_pair(const CapacitatedGraph& g, VertexId s, VertexId t, int level,
                              std::uint64_t seed, RunMode inner_mode) {
  ExperimentRecord r;
  r.source = s;
  r.sink = t;
  r.level = level;
  r.k = 1 << level;
  r.seed = seed;
  FlowResult exact;
  r.exact_seconds = time_seconds([&] { exact = edmonds_karp(g, s, t); });
  r.exact_value = exact.value;
  HeuristicResult heur;
  r.heuristic_seconds =
      time_seconds([&] { heur = heuristic_max_flow(g, s, t, level, seed, inner_mode); });
  r.heuristic_value = heur.value;
  return r;
}

}  // namespace

void write_csv(std::ostream& out, std::span<const ExperimentRecord> records) {
  out << kCsvSchema << '\n' << kCsvColumns << '\n';
  for (const ExperimentRecord& r : records) {
    out << r.experiment << ',' << r.dataset << ',' << r.nodes << ',' << r.edges << ','
        << format_double(r.inp) << ',' << format_double(r.outp) << ',' << r.clusters << ','
        << r.level << ',' << r.k << ',' << r.source << ',' << r.sink << ',' << r.exact_value
        << ',' << r.heuristic_value << ',' << format_double(r.exact_seconds) << ','
        << format_double(r.heuristic_seconds) << ',' << r.seed << ',' << r.rep << ','
        << r.policy << ',' << r.notes << '\n';
  }
}

std::string to_csv(std::span<const ExperimentRecord> records) {
  std::ostringstream os;
  write_csv(os, records);
  return os.str();
}

std::vector<ExperimentRecord> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvSchema) {
    throw Error(Errc::parse_error, "missing CSV schema line " + std::string(kCsvSchema));
  }
  if (!std::getline(in, line) || line != kCsvColumns) {
    throw Error(Errc::parse_error, "unexpected CSV column header");
  }

  std::vector<ExperimentRecord> records;
  std::int64_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto pos = line.find(',', start);
      fields.push_back(line.substr(start, pos == std::string::npos ? pos : pos - start));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    if (fields.size() != 19) {
      throw Error(Errc::parse_error,
                  "csv:" + std::to_string(line_no) + ": expected 19 fields, got " +
                      std::to_string(fields.size()));
    }
    ExperimentRecord r;
    std::size_t f = 0;
    const auto next = [&]() -> const std::string& { return fields[f++]; };
    try {
      r.experiment = next();
      r.dataset = next();
      r.nodes = std::stoll(next());
      r.edges = std::stoll(next());
      r.inp = std::stod(next());
      r.outp = std::stod(next());
      r.clusters = std::stoi(next());
      r.level = std::stoi(next());
      r.k = std::stoi(next());
      r.source = std::stoi(next());
      r.sink = std::stoi(next());
      r.exact_value = std::stoll(next());
      r.heuristic_value = std::stoll(next());
      r.exact_seconds = std::stod(next());
      r.heuristic_seconds = std::stod(next());
      r.seed = std::stoull(next());
      r.rep = std::stoi(next());
      r.policy = next();
      r.notes = next();
    } catch (const std::exception& e) {
      throw Error(Errc::parse_error, "csv:" + std::to_string(line_no) + ": " + e.what());
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<VertexId> top_degree_vertices(const CapacitatedGraph& g, int count) {
  std::vector<VertexId> ids(static_cast<std::size_t>(g.vertex_count()));
  for (VertexId v = 0; v < g.vertex_count(); ++v) ids[static_cast<std::size_t>(v)] = v;
  std::sort(ids.begin(), ids.end(), [&](VertexId a, VertexId b) {
    const EdgeId da = g.out_degree(a);
    const EdgeId db = g.out_degree(b);
    return da != db ? da > db : a < b;
  });
  if (static_cast<std::size_t>(count) < ids.size()) {
    ids.resize(static_cast<std::size_t>(count));
  }
  return ids;
}

std::pair<VertexId, VertexId> sample_endpoints_top_degree(const CapacitatedGraph& g,
                                                          int pool_size, std::uint64_t seed,
                                                          std::uint64_t index) {
  const std::vector<VertexId> pool = top_degree_vertices(g, pool_size);
  if (pool.size() < 2) {
    throw Error(Errc::too_few_vertices, "endpoint sampling needs at least 2 vertices");
  }
  Rng rng = Rng::substream(seed, Stream::bench_endpoints, index);
  const auto a = static_cast<std::size_t>(rng.bounded(pool.size()));
  auto b = static_cast<std::size_t>(rng.bounded(pool.size() - 1));
  if (b >= a) ++b;
  return {pool[a], pool[b]};
}

std::pair<VertexId, VertexId> sample_endpoints_distinct_clusters(
    std::span<const std::int32_t> labels, std::uint64_t seed, std::uint64_t index) {
  const std::size_t n = labels.size();
  if (n < 2) {
    throw Error(Errc::too_few_vertices, "endpoint sampling needs at least 2 vertices");
  }
  Rng rng = Rng::substream(seed, Stream::bench_endpoints, index);
  const auto s = static_cast<std::size_t>(rng.bounded(n));
  std::size_t candidates = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (labels[v] != labels[s]) ++candidates;
  }
  if (candidates == 0) {
    // Single cluster; fall back to any other vertex.
    auto t = static_cast<std::size_t>(rng.bounded(n - 1));
    if (t >= s) ++t;
    return {static_cast<VertexId>(s), static_cast<VertexId>(t)};
  }
  auto pick = rng.bounded(candidates);
  for (std::size_t v = 0; v < n; ++v) {
    if (labels[v] != labels[s] && pick-- == 0) {
      return {static_cast<VertexId>(s), static_cast<VertexId>(v)};
    }
  }
  throw Error(Errc::bad_config, "unreachable endpoint sampling state");
}

double median(std::vector<double> values) {
  if (values.empty()) {
    throw Error(Errc::bad_config, "median of empty sample");
  }
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<ExperimentRecord> run_scaling_sweep(const ScalingConfig& config) {
  validate_common(config.inp, config.outp, config.clusters, config.level, config.reps);
  if (config.node_counts.empty()) {
    throw Error(Errc::bad_config, "node_counts must not be empty");
  }
  for (const std::int64_t n : config.node_counts) {
    if (n < config.clusters) throw Error(Errc::bad_config, "node count below cluster count");
    const std::int64_t actual = (n / config.clusters) * config.clusters;
    if ((std::int64_t{1} << config.level) > actual) {
      throw Error(Errc::bad_config, "2^level exceeds node count " + std::to_string(actual));
    }
  }

  struct Task {
    std::size_t config_idx;
    int rep;
  };
  std::vector<Task> tasks;
  for (std::size_t ci = 0; ci < config.node_counts.size(); ++ci) {
    for (int rep = 0; rep < config.reps; ++rep) tasks.push_back({ci, rep});
  }
  std::vector<ExperimentRecord> records(tasks.size());

  const RunMode inner = config.parallel_reps ? RunMode::serial : RunMode::parallel;
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic) if (config.parallel_reps)
#endif
  for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
    const Task& task = tasks[ti];
    const std::uint64_t seed =
        instance_seed(config.seed, task.config_idx, static_cast<std::uint64_t>(task.rep));
    const GeneratedInstance inst = make_instance(config.node_counts[task.config_idx],
                                                 config.clusters, config.inp, config.outp, seed);
    ExperimentRecord r = measure_pair(inst.gen.graph, inst.source, inst.sink, config.level, seed,
                                      inner);
    r.experiment = "scaling";
    r.dataset = "-";
    r.nodes = inst.gen.graph.vertex_count();
    r.edges = inst.gen.graph.edge_count();
    r.inp = config.inp;
    r.outp = config.outp;
    r.clusters = config.clusters;
    r.rep = task.rep;
    r.policy = "distinct_clusters";
    r.notes = "rng=" + std::string(kRngScheme);
    records[ti] = std::move(r);
  }
  return records;
}

LevelSweepResult run_level_sweep(const LevelConfig& config) {
  validate_common(config.inp, config.outp, config.clusters, 0, config.reps);
  if (config.node_counts.empty()) {
    throw Error(Errc::bad_config, "node_counts must not be empty");
  }
  std::vector<int> levels = config.levels;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  if (levels.empty() || levels.front() != 0) {
    throw Error(Errc::missing_baseline_level, "level sweep requires the level-0 baseline");
  }
  for (int level : levels) {
    if (level < 0 || level > 30) throw Error(Errc::bad_config, "levels must lie in [0, 30]");
  }

  struct Task {
    std::size_t config_idx;
    int rep;
  };
  std::vector<Task> tasks;
  for (std::size_t ci = 0; ci < config.node_counts.size(); ++ci) {
    for (int rep = 0; rep < config.reps; ++rep) tasks.push_back({ci, rep});
  }
  std::vector<std::vector<ExperimentRecord>> per_task(tasks.size());

  const RunMode inner = config.parallel_reps ? RunMode::serial : RunMode::parallel;
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic) if (config.parallel_reps)
#endif
  for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
    const Task& task = tasks[ti];
    const std::uint64_t seed =
        instance_seed(config.seed, task.config_idx, static_cast<std::uint64_t>(task.rep));
    const GeneratedInstance inst = make_instance(config.node_counts[task.config_idx],
                                                 config.clusters, config.inp, config.outp, seed);
    const CapacitatedGraph& g = inst.gen.graph;

    FlowResult exact;
    const double exact_seconds =
        time_seconds([&] { exact = edmonds_karp(g, inst.source, inst.sink); });

    // One graph and endpoint pair shared across all levels of this rep.
    for (int level : levels) {
      if ((std::int64_t{1} << level) > g.vertex_count()) continue;
      ExperimentRecord r;
      HeuristicResult heur;
      r.heuristic_seconds = time_seconds(
          [&] { heur = heuristic_max_flow(g, inst.source, inst.sink, level, seed, inner); });
      r.experiment = "levels";
      r.dataset = "-";
      r.nodes = g.vertex_count();
      r.edges = g.edge_count();
      r.inp = config.inp;
      r.outp = config.outp;
      r.clusters = config.clusters;
      r.level = level;
      r.k = 1 << level;
      r.source = inst.source;
      r.sink = inst.sink;
      r.exact_value = exact.value;
      r.exact_seconds = exact_seconds;
      r.heuristic_value = heur.value;
      r.seed = seed;
      r.rep = task.rep;
      r.policy = "distinct_clusters";
      r.notes = "rng=" + std::string(kRngScheme);
      per_task[ti].push_back(std::move(r));
    }
  }

  LevelSweepResult result;
  for (auto& batch : per_task) {
    for (auto& r : batch) result.records.push_back(std::move(r));
  }
  result.ratios = level_ratio_table(result.records);
  return result;
}

std::vector<LevelRatioRow> level_ratio_table(std::span<const ExperimentRecord> records) {
  std::map<std::pair<std::int64_t, int>, std::vector<double>> samples;
  for (const ExperimentRecord& r : records) {
    samples[{r.nodes, r.level}].push_back(r.heuristic_seconds);
  }

  std::map<std::int64_t, double> baseline;
  for (const auto& [key, times] : samples) {
    if (key.second == 0) baseline[key.first] = median(times);
  }

  std::vector<LevelRatioRow> rows;
  for (const auto& [key, times] : samples) {
    const auto base = baseline.find(key.first);
    if (base == baseline.end()) {
      throw Error(Errc::missing_baseline_level,
                  "no level-0 baseline for node count " + std::to_string(key.first));
    }
    LevelRatioRow row;
    row.nodes = key.first;
    row.level = key.second;
    row.median_seconds = median(times);
    row.ratio_to_baseline = row.median_seconds / base->second;
    row.samples = static_cast<int>(times.size());
    rows.push_back(row);
  }
  return rows;
}

std::span<const DatasetCounts> known_dataset_counts() {
  static constexpr DatasetCounts kCounts[] = {
      {"drosophila-medulla", 1781, 9735},   {"mouse-retina", 1076, 90811},
      {"macaque-rhesus-brain", 242, 4090},  {"mouse-brain", 213, 21807},
      {"macaque-rhesus-cortical", 93, 2667}, {"macaque-rhesus-cerebral", 91, 1615},
  };
  return kCounts;
}

std::vector<ExperimentRecord> run_dataset_bench(const DatasetConfig& config) {
  if (config.paths.empty()) {
    throw Error(Errc::bad_config, "no dataset paths given");
  }
  if (config.reps < 1) throw Error(Errc::bad_config, "reps must be >= 1");
  if (config.level < 0) throw Error(Errc::bad_config, "level must be >= 0");
  if (config.top_degree_pool < 2) {
    throw Error(Errc::bad_config, "top_degree_pool must be >= 2");
  }

  std::vector<ExperimentRecord> records;
  for (std::size_t pi = 0; pi < config.paths.size(); ++pi) {
    const std::string& path = config.paths[pi];
    const LoadedGraph loaded = load_edge_list(path, config.load);
    const CapacitatedGraph& g = loaded.graph;
    const std::string name = sanitize_field(std::filesystem::path(path).stem().string());

    // Verify node/edge counts against the published benchmark numbers when
    // they identify a known dataset.
    std::string count_match = "none";
    for (const DatasetCounts& known : known_dataset_counts()) {
      if (known.nodes == g.vertex_count() && known.edges == loaded.report.merged_edge_count) {
        count_match = known.name;
        break;
      }
    }

    std::ostringstream notes;
    notes << "symmetrize=" << (loaded.report.symmetrized ? 1 : 0)
          << ";index_base=" << loaded.report.resolved_base
          << ";id_offset=" << loaded.report.id_offset
          << ";directed_edges=" << g.edge_count()
          << ";undirected_pairs=" << loaded.report.undirected_pair_count
          << ";self_loops_dropped=" << loaded.report.self_loops_dropped
          << ";rounded_weights=" << loaded.report.rounded_weights
          << ";count_match=" << count_match;

    for (int rep = 0; rep < config.reps; ++rep) {
      const std::uint64_t seed = instance_seed(config.seed, pi, static_cast<std::uint64_t>(rep));
      const auto [s, t] = sample_endpoints_top_degree(g, config.top_degree_pool, seed, 0);
      ExperimentRecord r = measure_pair(g, s, t, config.level, seed, RunMode::parallel);
      r.experiment = "datasets";
      r.dataset = name;
      r.nodes = g.vertex_count();
      r.edges = loaded.report.merged_edge_count;
      r.rep = rep;
      r.policy = "top" + std::to_string(config.top_degree_pool) + "_degree";
      r.notes = notes.str();
      records.push_back(std::move(r));
    }
  }
  return records;
}

}  // namespace flowpart
