// Acceptance suite: one check per release criterion, each printing a
// [PASS]/[FAIL]/[SKIP] line. Exits nonzero when any criterion fails.
//
// The dataset fidelity criterion needs the six brain-network benchmark
// edge-list files on disk; point FLOWPART_DATA_DIR (or --data-dir) at the
// directory holding them. Without the files that criterion reports SKIP.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "flowpart/bench.hpp"
#include "flowpart/generator.hpp"
#include "flowpart/heuristic.hpp"
#include "flowpart/io.hpp"
#include "flowpart/maxflow.hpp"
#include "flowpart/partition.hpp"
#include "helpers.hpp"

namespace {

using namespace flowpart;

enum class Status { pass, fail, skip };

struct Outcome {
  Status status = Status::pass;
  std::string detail;
};

struct Check {
  const char* name;
  Outcome (*run)(const std::string& data_dir);
};

Outcome pass(std::string detail) { return {Status::pass, std::move(detail)}; }
Outcome fail(std::string detail) { return {Status::fail, std::move(detail)}; }
Outcome skip(std::string detail) { return {Status::skip, std::move(detail)}; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string format_seconds(double s) {
  std::ostringstream os;
  os.precision(3);
  os << std::fixed << s << " s";
  return os.str();
}

// ---------------------------------------------------------------------------
// Exactness: max flow equals the exhaustive min cut on 200 small graphs,
// integer-exact, within a 10 second budget.
Outcome check_exactness(const std::string&) {
  const auto t0 = std::chrono::steady_clock::now();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(detail::mix64(seed * 31 + 1));
    const auto n = static_cast<VertexId>(2 + rng.bounded(9));
    const auto g = testing::random_graph(seed, n, 0.35, 10);
    const VertexId s = 0;
    const auto t = static_cast<VertexId>(1 + rng.bounded(static_cast<std::uint64_t>(n - 1)));
    const Flow flow = edmonds_karp(g, s, t).value;
    const Flow cut = min_cut_oracle(g, s, t);
    if (flow != cut) {
      return fail("seed " + std::to_string(seed) + ": flow " + std::to_string(flow) +
                  " != min cut " + std::to_string(cut));
    }
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= 10.0) {
    return fail("200 graphs took " + format_seconds(elapsed) + ", budget is 10 s");
  }
  return pass("200/200 graphs agree with the exhaustive min cut in " + format_seconds(elapsed));
}

// ---------------------------------------------------------------------------
// Flow validity: every edmonds_karp output on 500 graphs up to 500 vertices
// satisfies capacity, conservation, and value consistency.
Outcome check_flow_validity(const std::string&) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Rng rng(detail::mix64(seed * 17 + 3));
    const auto n = static_cast<VertexId>(2 + rng.bounded(499));
    const double p = std::min(1.0, 6.0 / static_cast<double>(n));
    const auto g = testing::random_graph(seed + 1000, n, p, 10);
    const auto t = static_cast<VertexId>(1 + rng.bounded(static_cast<std::uint64_t>(n - 1)));
    const auto f = edmonds_karp(g, 0, t);
    if (const auto violation = validate_flow(g, 0, t, f)) {
      return fail("seed " + std::to_string(seed) + ": " + *violation);
    }
  }
  return pass("500/500 flows valid, zero violations");
}

// ---------------------------------------------------------------------------
// Level-0 reduction: the heuristic with a single partition equals the exact
// flow on 100 mixed clustered and non-clustered graphs.
Outcome check_level0(const std::string&) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GeneratorConfig cfg;
    if (seed % 2 == 0) {
      cfg.clusters = 4;
      cfg.nodes_per_cluster = 5 + static_cast<std::int32_t>(seed % 26);
      cfg.inp = 0.3;
      cfg.outp = 0.05;
    } else {
      cfg.clusters = 3;
      cfg.nodes_per_cluster = 5 + static_cast<std::int32_t>(seed % 26);
      cfg.inp = 0.1;
      cfg.outp = 0.1;  // no cluster structure
    }
    cfg.seed = seed;
    const auto gen = generate(cfg);
    const auto [s, t] = sample_endpoints_distinct_clusters(gen.labels, seed, 1);
    const Flow exact = edmonds_karp(gen.graph, s, t).value;
    const auto h = heuristic_max_flow(gen.graph, s, t, 0, seed);
    if (h.branch != HeuristicBranch::same_cluster || h.value != exact) {
      return fail("seed " + std::to_string(seed) + ": heuristic " + std::to_string(h.value) +
                  " != exact " + std::to_string(exact));
    }
  }
  return pass("100/100 graphs: level-0 heuristic equals the exact flow");
}

// ---------------------------------------------------------------------------
// Same-cluster branch: with s and t in one partition, the heuristic equals
// the exact flow of that partition's induced subgraph; 50 constructed
// instances.
Outcome check_same_cluster(const std::string&) {
  int verified = 0;
  for (std::uint64_t seed = 0; seed < 60 && verified < 50; ++seed) {
    const auto size = static_cast<VertexId>(4 + seed % 8);
    Rng caps(detail::mix64(seed * 7 + 5));
    std::vector<Edge> edges;
    for (VertexId c : {VertexId{0}, size}) {
      for (VertexId a = c; a < c + size; ++a) {
        for (VertexId b = a + 1; b < c + size; ++b) {
          const Flow w = 1 + static_cast<Flow>(caps.bounded(10));
          edges.push_back({a, b, w});
          edges.push_back({b, a, w});
        }
      }
    }
    edges.push_back({0, size, 1 + static_cast<Flow>(caps.bounded(10))});
    const auto g = build_graph(2 * size, edges);

    const VertexId s = 1, t = 2;  // both inside the first clique
    const auto h = heuristic_max_flow(g, s, t, 1, seed);
    if (h.branch != HeuristicBranch::same_cluster) continue;  // split missed the cliques
    const auto p = recursive_partition(g, 1, seed);
    const auto sub =
        induced_subgraph(g, p.members[static_cast<std::size_t>(h.source_partition)]);
    const Flow expected = edmonds_karp(sub.graph, sub.local_of(s), sub.local_of(t)).value;
    if (h.value != expected) {
      return fail("seed " + std::to_string(seed) + ": heuristic " + std::to_string(h.value) +
                  " != induced-subgraph flow " + std::to_string(expected));
    }
    ++verified;
  }
  if (verified < 50) {
    return fail("only " + std::to_string(verified) + "/50 instances took the same-cluster branch");
  }
  return pass("50/50 same-cluster instances equal the induced-subgraph flow");
}

// ---------------------------------------------------------------------------
// Partition invariants: 200 recursive runs at levels 1..3 keep balance <= 1
// at every split, disjoint coverage, and per-pass cut monotonicity.
Outcome check_partition_invariants(const std::string&) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const int level = 1 + static_cast<int>(i % 3);
    GeneratorConfig cfg;
    cfg.clusters = 2 + static_cast<std::int32_t>(i % 5);
    cfg.nodes_per_cluster = 5 + static_cast<std::int32_t>((i * 13) % 16);
    cfg.inp = 0.25 + 0.05 * static_cast<double>(i % 5);
    cfg.outp = 0.02 + 0.01 * static_cast<double>(i % 4);
    cfg.seed = i;
    const auto gen = generate(cfg);
    PartitionTrace trace;
    const auto p = recursive_partition(gen.graph, level, i, RunMode::parallel, &trace);

    const auto id = "run " + std::to_string(i);
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(gen.graph.vertex_count()), 0);
    std::size_t covered = 0;
    for (int part = 0; part < p.k; ++part) {
      for (VertexId v : p.members[static_cast<std::size_t>(part)]) {
        if (p.part_of[static_cast<std::size_t>(v)] != part || seen[static_cast<std::size_t>(v)]) {
          return fail(id + ": member lists are not a disjoint cover");
        }
        seen[static_cast<std::size_t>(v)] = 1;
        ++covered;
      }
    }
    if (covered != static_cast<std::size_t>(gen.graph.vertex_count())) {
      return fail(id + ": cover misses vertices");
    }
    if (trace.splits.size() != static_cast<std::size_t>(p.k - 1)) {
      return fail(id + ": expected " + std::to_string(p.k - 1) + " splits");
    }
    for (const auto& split : trace.splits) {
      const auto diff = static_cast<long long>(split.left_size) -
                        static_cast<long long>(split.right_size);
      if (diff > 1 || diff < -1) {
        return fail(id + ": unbalanced split " + std::to_string(split.left_size) + "/" +
                    std::to_string(split.right_size));
      }
      int prev = split.initial_cut;
      for (int cut : split.pass_cuts) {
        if (cut > prev) {
          return fail(id + ": a pass increased the cut from " + std::to_string(prev) + " to " +
                      std::to_string(cut));
        }
        prev = cut;
      }
      if (split.final_cut > split.initial_cut) {
        return fail(id + ": final cut exceeds the initial cut");
      }
    }
  }
  return pass("200/200 runs: balance, coverage, and cut monotonicity hold");
}

// ---------------------------------------------------------------------------
// Cluster recovery: the 4x10 clustered configuration is recovered exactly
// (up to relabeling) in at least 90% of 50 seeds at level 2.
Outcome check_cluster_recovery(const std::string&) {
  int recovered = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GeneratorConfig cfg;
    cfg.clusters = 4;
    cfg.nodes_per_cluster = 10;
    cfg.inp = 0.5;
    cfg.outp = 0.05;
    cfg.seed = seed;
    const auto gen = generate(cfg);
    const auto p = recursive_partition(gen.graph, 2, seed);

    std::set<std::pair<std::int32_t, std::int32_t>> pairs;
    for (std::size_t v = 0; v < gen.labels.size(); ++v) {
      pairs.insert({gen.labels[v], p.part_of[v]});
    }
    if (pairs.size() == 4) ++recovered;
  }
  const std::string detail =
      std::to_string(recovered) + "/50 seeds recovered the planted clusters (need >= 45)";
  return recovered >= 45 ? pass(detail) : fail(detail);
}

// ---------------------------------------------------------------------------
// Runtime trend: at 2000 nodes (sparse, clustered), the heuristic's median
// runtime at level 3 must be strictly below the exact median over 10 reps.
Outcome check_runtime_trend(const std::string&) {
  ScalingConfig config;
  config.node_counts = {2000};
  config.inp = 0.01;
  config.outp = 0.005;
  config.clusters = 8;
  config.level = 3;
  config.reps = 10;
  config.seed = 20240001;
  const auto records = run_scaling_sweep(config);

  std::vector<double> exact_times, heuristic_times;
  for (const auto& r : records) {
    exact_times.push_back(r.exact_seconds);
    heuristic_times.push_back(r.heuristic_seconds);
  }
  const double exact_median = median(exact_times);
  const double heuristic_median = median(heuristic_times);
  std::ostringstream detail;
  detail.precision(4);
  detail << "median heuristic " << heuristic_median * 1e3 << " ms vs median exact "
         << exact_median * 1e3 << " ms over 10 reps";
  if (heuristic_median < exact_median) return pass(detail.str());
  detail << "; partitioning dominates the heuristic at this scale in this implementation";
  return fail(detail.str());
}

// ---------------------------------------------------------------------------
// Partition-count trend: at 600 nodes the runtime ratios to the level-0
// baseline must improve monotonically, ratio(4) < ratio(2) < 1, over 30 reps.
Outcome check_partition_count_trend(const std::string&) {
  LevelConfig config;
  config.node_counts = {600};
  config.levels = {0, 2, 4};
  config.inp = 0.01;
  config.outp = 0.005;
  config.clusters = 8;
  config.reps = 30;
  config.seed = 20240002;
  const auto result = run_level_sweep(config);

  std::map<int, double> ratio;
  for (const auto& row : result.ratios) ratio[row.level] = row.ratio_to_baseline;
  std::ostringstream detail;
  detail.precision(4);
  detail << "ratio(l=2) = " << ratio[2] << ", ratio(l=4) = " << ratio[4]
         << " relative to level 0";
  if (ratio[4] < ratio[2] && ratio[2] < 1.0) return pass(detail.str());
  return fail(detail.str() + "; exact flow at 600 sparse nodes is cheaper than partitioning here");
}

// ---------------------------------------------------------------------------
// Dataset fidelity: loading the six benchmark datasets reproduces the
// published node/edge counts exactly; with seeded top-20-degree endpoints
// both algorithms complete and the median heuristic/exact ratio per dataset
// stays in (0, 1.2]. Requires the dataset files on disk.
Outcome check_dataset_fidelity(const std::string& data_dir) {
  namespace fs = std::filesystem;
  if (data_dir.empty() || !fs::is_directory(data_dir)) {
    return skip("dataset directory '" + data_dir +
                "' not found; place the six benchmark edge lists there to run this criterion");
  }

  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(data_dir)) {
    if (entry.is_regular_file() && entry.path().filename().string()[0] != '.' &&
        entry.path().extension() != ".md") {
      files.push_back(entry.path().string());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    return skip("dataset directory '" + data_dir + "' is empty");
  }

  LoadOptions load;
  load.symmetrize = true;
  std::map<std::string, LoadedGraph> matched;
  std::ostringstream log;
  for (const auto& path : files) {
    LoadedGraph loaded;
    try {
      loaded = load_edge_list(path, load);
    } catch (const Error& e) {
      log << "  note: " << path << " not loadable: " << e.what() << "\n";
      continue;
    }
    for (const auto& known : known_dataset_counts()) {
      if (loaded.graph.vertex_count() == known.nodes &&
          loaded.report.merged_edge_count == known.edges) {
        matched.emplace(known.name, std::move(loaded));
        break;
      }
    }
  }

  std::vector<std::string> missing;
  for (const auto& known : known_dataset_counts()) {
    if (!matched.count(known.name)) missing.push_back(known.name);
  }
  if (!missing.empty()) {
    std::string names;
    for (const auto& name : missing) names += (names.empty() ? "" : ", ") + name;
    return fail("published node/edge counts not reproduced for: " + names +
                " (files missing or counts differ)");
  }

  // Counts verified exactly. Now the substituted value/runtime property.
  std::ostringstream detail;
  detail << "6/6 datasets match the published counts;";
  for (const auto& [name, loaded] : matched) {
    std::vector<double> ratios;
    int underestimates = 0, zero_exact = 0;
    for (std::uint64_t rep = 0; rep < 20; ++rep) {
      const std::uint64_t seed = detail::mix64(rep * 1009 + 7);
      const auto [s, t] = sample_endpoints_top_degree(loaded.graph, 20, seed, 0);
      const Flow exact = edmonds_karp(loaded.graph, s, t).value;
      const auto h = heuristic_max_flow(loaded.graph, s, t, 3, seed);
      if (h.value < 0) return fail(name + ": negative heuristic value");
      if (exact == 0) {
        ++zero_exact;
        continue;
      }
      ratios.push_back(static_cast<double>(h.value) / static_cast<double>(exact));
      if (h.value <= exact) ++underestimates;
    }
    if (ratios.empty()) {
      return fail(name + ": every sampled endpoint pair had zero exact flow");
    }
    const double med = median(ratios);
    detail.precision(3);
    detail << " " << name << ": median value ratio " << med << " (" << underestimates << "/"
           << ratios.size() << " underestimates";
    if (zero_exact > 0) detail << ", " << zero_exact << " zero-flow pairs skipped";
    detail << ");";
    if (!(med > 0.0 && med <= 1.2)) {
      return fail(name + ": median heuristic/exact ratio " + std::to_string(med) +
                  " outside (0, 1.2]");
    }
  }
  return pass(detail.str());
}

// ---------------------------------------------------------------------------
// Underestimation tendency: heuristic <= exact in at least 80% of 100 seeded
// clustered graphs at 800 nodes, level 3.
Outcome check_underestimation(const std::string&) {
  int underestimates = 0;
  std::ostringstream failures;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GeneratorConfig cfg;
    cfg.clusters = 8;
    cfg.nodes_per_cluster = 100;
    cfg.inp = 0.01;
    cfg.outp = 0.005;
    cfg.seed = seed;
    const auto gen = generate(cfg);
    const auto [s, t] = sample_endpoints_distinct_clusters(gen.labels, seed, 2);
    const Flow exact = edmonds_karp(gen.graph, s, t).value;
    const auto h = heuristic_max_flow(gen.graph, s, t, 3, seed);
    if (h.value <= exact) {
      ++underestimates;
    } else if (failures.tellp() < 400) {
      failures << " [seed " << seed << ": heuristic " << h.value << " > exact " << exact << "]";
    }
  }
  const std::string detail = std::to_string(underestimates) +
                             "/100 seeds underestimate or match (need >= 80)" + failures.str();
  return underestimates >= 80 ? pass(detail) : fail(detail);
}

// ---------------------------------------------------------------------------
// Determinism: reruns with identical inputs and seeds reproduce values,
// partitions, traces, and serialized outputs byte-exactly.
Outcome check_determinism(const std::string&) {
  GeneratorConfig cfg;
  cfg.clusters = 6;
  cfg.nodes_per_cluster = 30;
  cfg.inp = 0.15;
  cfg.outp = 0.02;
  cfg.seed = 2024;

  const auto gen1 = generate(cfg);
  const auto gen2 = generate(cfg);
  if (to_edge_list(gen1.graph) != to_edge_list(gen2.graph)) {
    return fail("generator output differs between reruns");
  }

  const auto p1 = recursive_partition(gen1.graph, 3, 99, RunMode::parallel);
  const auto p2 = recursive_partition(gen2.graph, 3, 99, RunMode::serial);
  if (partition_csv(p1) != partition_csv(p2)) {
    return fail("partition assignments differ between reruns/modes");
  }

  const auto [s, t] = sample_endpoints_distinct_clusters(gen1.labels, 11, 0);
  if (!(edmonds_karp(gen1.graph, s, t) == edmonds_karp(gen2.graph, s, t))) {
    return fail("exact flow results differ between reruns");
  }
  const auto h1 = heuristic_max_flow(gen1.graph, s, t, 2, 7, RunMode::parallel);
  const auto h2 = heuristic_max_flow(gen2.graph, s, t, 2, 7, RunMode::serial);
  if (heuristic_record(h1) != heuristic_record(h2)) {
    return fail("heuristic records differ between reruns/modes");
  }

  ScalingConfig sweep;
  sweep.node_counts = {150};
  sweep.level = 2;
  sweep.reps = 3;
  sweep.seed = 5;
  const auto r1 = run_scaling_sweep(sweep);
  auto r2 = run_scaling_sweep(sweep);
  if (r1.size() != r2.size()) return fail("sweep record counts differ");
  for (std::size_t i = 0; i < r1.size(); ++i) {
    auto a = r1[i];
    auto b = r2[i];
    a.exact_seconds = b.exact_seconds = 0;  // timings are the only nondeterministic fields
    a.heuristic_seconds = b.heuristic_seconds = 0;
    if (!(a == b)) return fail("sweep record " + std::to_string(i) + " differs between reruns");
  }
  return pass("generator, partitions, flows, records, and serializations are byte-stable");
}

const Check kChecks[] = {
    {"exactness-min-cut", check_exactness},
    {"flow-validity", check_flow_validity},
    {"level0-reduction", check_level0},
    {"same-cluster-branch", check_same_cluster},
    {"partition-invariants", check_partition_invariants},
    {"cluster-recovery", check_cluster_recovery},
    {"runtime-trend-2000", check_runtime_trend},
    {"partition-count-trend-600", check_partition_count_trend},
    {"dataset-fidelity", check_dataset_fidelity},
    {"underestimation-tendency", check_underestimation},
    {"determinism", check_determinism},
};

}  // namespace

int main(int argc, char** argv) {
  std::string data_dir = "data";
  if (const char* env = std::getenv("FLOWPART_DATA_DIR")) data_dir = env;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--data-dir") data_dir = argv[i + 1];
  }

  std::cout << "flowpart acceptance suite\n";
  int failed = 0, skipped = 0, passed = 0;
  for (const Check& check : kChecks) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = check.run(data_dir);
    } catch (const std::exception& e) {
      outcome = fail(std::string("unexpected exception: ") + e.what());
    }
    const double elapsed = seconds_since(t0);
    const char* tag = outcome.status == Status::pass   ? "[PASS]"
                      : outcome.status == Status::fail ? "[FAIL]"
                                                       : "[SKIP]";
    std::cout << tag << " " << check.name << " (" << format_seconds(elapsed)
              << "): " << outcome.detail << "\n";
    if (outcome.status == Status::fail) ++failed;
    if (outcome.status == Status::skip) ++skipped;
    if (outcome.status == Status::pass) ++passed;
  }
  std::cout << "RESULT: " << passed << " passed, " << failed << " failed, " << skipped
            << " skipped\n";
  return failed == 0 ? 0 : 1;
}
