// flowpart: max-flow toolkit for capacitated networks. Exact flow, a
// partition-based approximation, a clustered random-graph generator, and a
// benchmark harness writing versioned CSV.
//
// Results (values, partitions, traces) go to stdout and are byte-stable for
// fixed inputs and seeds; timings and progress go to stderr.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "flowpart/bench.hpp"
#include "flowpart/generator.hpp"
#include "flowpart/heuristic.hpp"
#include "flowpart/io.hpp"
#include "flowpart/maxflow.hpp"
#include "flowpart/partition.hpp"

namespace {

using namespace flowpart;

struct LoadFlags {
  bool symmetrize = false;
  Flow default_capacity = 1;
  std::string index_base = "auto";
  std::string weights = "auto";

  LoadOptions options() const {
    LoadOptions o;
    o.symmetrize = symmetrize;
    o.default_capacity = default_capacity;
    if (index_base == "auto") {
      o.index_base = IndexBase::automatic;
    } else if (index_base == "0") {
      o.index_base = IndexBase::zero;
    } else if (index_base == "1") {
      o.index_base = IndexBase::one;
    } else {
      throw Error(Errc::bad_config, "--index-base must be auto, 0 or 1");
    }
    if (weights == "auto") {
      o.weights = WeightMode::automatic;
    } else if (weights == "required") {
      o.weights = WeightMode::required;
    } else if (weights == "ignore") {
      o.weights = WeightMode::ignore;
    } else {
      throw Error(Errc::bad_config, "--weights must be auto, required or ignore");
    }
    return o;
  }
};

void add_load_flags(CLI::App* cmd, LoadFlags& flags) {
  cmd->add_flag("--symmetrize,!--no-symmetrize", flags.symmetrize,
                "add missing reverse edges with equal capacity");
  cmd->add_option("--default-capacity", flags.default_capacity,
                  "capacity for unweighted lines (default 1)");
  cmd->add_option("--index-base", flags.index_base, "vertex id base: auto, 0 or 1");
  cmd->add_option("--weights", flags.weights, "weight column handling: auto, required, ignore");
}

LoadedGraph load_with_summary(const std::string& path, const LoadFlags& flags) {
  LoadedGraph loaded = load_edge_list(path, flags.options());
  const LoadReport& rep = loaded.report;
  std::cerr << path << ": " << loaded.graph.vertex_count() << " vertices, "
            << loaded.graph.edge_count() << " directed edges (" << rep.merged_edge_count
            << " merged, " << rep.undirected_pair_count << " undirected pairs)"
            << ", base " << rep.resolved_base << ", id offset " << rep.id_offset
            << (rep.symmetrized ? ", symmetrized" : "") << "\n";
  if (rep.id_offset != 0) {
    std::cerr << "note: vertex arguments use 0-based ids; file id x maps to "
              << "x - " << rep.id_offset << "\n";
  }
  return loaded;
}

std::vector<ExperimentRecord> maybe_write_csv(std::vector<ExperimentRecord> records,
                                              const std::string& out_path) {
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw Error(Errc::io_unreadable, out_path + ": cannot open for writing");
    write_csv(out, records);
    std::cerr << "wrote " << records.size() << " records to " << out_path << "\n";
  } else {
    write_csv(std::cout, records);
  }
  return records;
}

int run(int argc, char** argv) {
  CLI::App app{"flowpart: exact and partition-based approximate maximum flow"};
  app.require_subcommand(1);

  // ---- exact ----
  auto* exact_cmd = app.add_subcommand("exact", "exact maximum flow on an edge-list file");
  std::string exact_path;
  VertexId exact_s = 0, exact_t = 0;
  LoadFlags exact_flags;
  exact_cmd->add_option("graph", exact_path, "edge-list file")->required();
  exact_cmd->add_option("source", exact_s, "source vertex (0-based)")->required();
  exact_cmd->add_option("sink", exact_t, "sink vertex (0-based)")->required();
  add_load_flags(exact_cmd, exact_flags);
  exact_cmd->callback([&] {
    const auto loaded = load_with_summary(exact_path, exact_flags);
    FlowResult f;
    const auto t0 = std::chrono::steady_clock::now();
    f = edmonds_karp(loaded.graph, exact_s, exact_t);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "value=" << f.value << "\n";
    std::cout << "augmenting_paths=" << f.augmenting_paths << "\n";
    std::cerr << "runtime_seconds=" << secs << "\n";
  });

  // ---- heuristic ----
  auto* heur_cmd =
      app.add_subcommand("heuristic", "partition-based approximate maximum flow");
  std::string heur_path;
  VertexId heur_s = 0, heur_t = 0;
  int heur_level = 3;
  std::uint64_t heur_seed = 0;
  bool heur_serial = false;
  LoadFlags heur_flags;
  heur_cmd->add_option("graph", heur_path, "edge-list file")->required();
  heur_cmd->add_option("source", heur_s, "source vertex (0-based)")->required();
  heur_cmd->add_option("sink", heur_t, "sink vertex (0-based)")->required();
  heur_cmd->add_option("--level", heur_level, "partition recursion depth, k = 2^level");
  heur_cmd->add_option("--seed", heur_seed, "seed for partitioning and endpoint sampling");
  heur_cmd->add_flag("--serial", heur_serial, "disable the parallel kernels");
  add_load_flags(heur_cmd, heur_flags);
  heur_cmd->callback([&] {
    const auto loaded = load_with_summary(heur_path, heur_flags);
    HeuristicResult h;
    const auto t0 = std::chrono::steady_clock::now();
    h = heuristic_max_flow(loaded.graph, heur_s, heur_t, heur_level, heur_seed,
                           heur_serial ? RunMode::serial : RunMode::parallel);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << heuristic_record(h);
    std::cerr << "runtime_seconds=" << secs << "\n";
  });

  // ---- gen ----
  auto* gen_cmd = app.add_subcommand("gen", "generate a clustered random graph");
  GeneratorConfig gen_cfg;
  gen_cfg.clusters = 8;
  gen_cfg.nodes_per_cluster = 100;
  gen_cfg.inp = 0.01;
  gen_cfg.outp = 0.005;
  std::string gen_out, gen_labels_out;
  gen_cmd->add_option("--clusters", gen_cfg.clusters, "planted clusters");
  gen_cmd->add_option("--nodes-per-cluster", gen_cfg.nodes_per_cluster, "vertices per cluster");
  gen_cmd->add_option("--inp", gen_cfg.inp, "within-cluster edge probability");
  gen_cmd->add_option("--outp", gen_cfg.outp, "between-cluster edge probability");
  gen_cmd->add_option("--weight-min", gen_cfg.weight_min, "minimum edge weight");
  gen_cmd->add_option("--weight-max", gen_cfg.weight_max, "maximum edge weight");
  gen_cmd->add_option("--seed", gen_cfg.seed, "generator seed");
  gen_cmd->add_option("--out", gen_out, "edge-list output file (stdout when omitted)");
  gen_cmd->add_option("--labels-out", gen_labels_out, "planted labels CSV output");
  gen_cmd->callback([&] {
    const auto gen = generate(gen_cfg);
    if (gen_out.empty()) {
      write_edge_list(gen.graph, std::cout);
    } else {
      save_edge_list(gen.graph, gen_out);
      std::cerr << "wrote " << gen.graph.vertex_count() << " vertices, "
                << gen.graph.edge_count() << " directed edges to " << gen_out << "\n";
    }
    if (!gen_labels_out.empty()) {
      std::ofstream out(gen_labels_out);
      if (!out) throw Error(Errc::io_unreadable, gen_labels_out + ": cannot open for writing");
      out << "vertex_id,cluster\n";
      for (std::size_t v = 0; v < gen.labels.size(); ++v) {
        out << v << ',' << gen.labels[v] << '\n';
      }
    }
  });

  // ---- partition ----
  auto* part_cmd = app.add_subcommand("partition", "recursive balanced partitioning");
  std::string part_path, part_out;
  int part_level = 1;
  std::uint64_t part_seed = 0;
  bool part_serial = false;
  LoadFlags part_flags;
  part_cmd->add_option("graph", part_path, "edge-list file")->required();
  part_cmd->add_option("--level", part_level, "recursion depth, k = 2^level");
  part_cmd->add_option("--seed", part_seed, "seed");
  part_cmd->add_flag("--serial", part_serial, "disable the parallel kernels");
  part_cmd->add_option("--out", part_out, "CSV output file (stdout when omitted)");
  add_load_flags(part_cmd, part_flags);
  part_cmd->callback([&] {
    const auto loaded = load_with_summary(part_path, part_flags);
    PartitionTrace trace;
    const auto p = recursive_partition(loaded.graph, part_level, part_seed,
                                       part_serial ? RunMode::serial : RunMode::parallel, &trace);
    int cut = 0;
    for (const auto& split : trace.splits) cut += split.final_cut;
    std::cerr << "k=" << p.k << ", total cut edges across splits=" << cut << "\n";
    if (part_out.empty()) {
      std::cout << partition_csv(p);
    } else {
      std::ofstream out(part_out);
      if (!out) throw Error(Errc::io_unreadable, part_out + ": cannot open for writing");
      out << partition_csv(p);
    }
  });

  // ---- bench ----
  auto* bench_cmd = app.add_subcommand("bench", "benchmark harness");
  bench_cmd->require_subcommand(1);

  auto* scaling_cmd = bench_cmd->add_subcommand("scaling", "node-count sweep");
  ScalingConfig scaling;
  scaling.node_counts = {100, 300, 500, 700, 900};
  std::string scaling_out;
  scaling_cmd->add_option("--nodes", scaling.node_counts, "node counts")->delimiter(',');
  scaling_cmd->add_option("--inp", scaling.inp, "within-cluster probability");
  scaling_cmd->add_option("--outp", scaling.outp, "between-cluster probability");
  scaling_cmd->add_option("--clusters", scaling.clusters, "planted clusters");
  scaling_cmd->add_option("--level", scaling.level, "heuristic level");
  scaling_cmd->add_option("--reps", scaling.reps, "repetitions per node count");
  scaling_cmd->add_option("--seed", scaling.seed, "master seed");
  scaling_cmd->add_flag("--parallel", scaling.parallel_reps,
                        "run repetitions in parallel (skews timings)");
  scaling_cmd->add_option("--out", scaling_out, "CSV output file");
  scaling_cmd->callback([&] { maybe_write_csv(run_scaling_sweep(scaling), scaling_out); });

  auto* levels_cmd = bench_cmd->add_subcommand("levels", "partition-level sweep with ratios");
  LevelConfig levels;
  levels.node_counts = {100, 300, 500, 700, 900};
  levels.levels = {0, 2, 4, 6, 8, 10};
  std::string levels_out;
  levels_cmd->add_option("--nodes", levels.node_counts, "node counts")->delimiter(',');
  levels_cmd->add_option("--levels", levels.levels, "levels; must include 0")->delimiter(',');
  levels_cmd->add_option("--inp", levels.inp, "within-cluster probability");
  levels_cmd->add_option("--outp", levels.outp, "between-cluster probability");
  levels_cmd->add_option("--clusters", levels.clusters, "planted clusters");
  levels_cmd->add_option("--reps", levels.reps, "repetitions per node count");
  levels_cmd->add_option("--seed", levels.seed, "master seed");
  levels_cmd->add_flag("--parallel", levels.parallel_reps,
                       "run repetitions in parallel (skews timings)");
  levels_cmd->add_option("--out", levels_out, "CSV output file for raw records");
  levels_cmd->callback([&] {
    const auto result = run_level_sweep(levels);
    if (!levels_out.empty()) {
      std::ofstream out(levels_out);
      if (!out) throw Error(Errc::io_unreadable, levels_out + ": cannot open for writing");
      write_csv(out, result.records);
      std::cerr << "wrote " << result.records.size() << " records to " << levels_out << "\n";
    }
    std::cout << "nodes,level,median_seconds,ratio_to_level0,samples\n";
    for (const auto& row : result.ratios) {
      std::cout << row.nodes << ',' << row.level << ',' << row.median_seconds << ','
                << row.ratio_to_baseline << ',' << row.samples << '\n';
    }
  });

  auto* datasets_cmd = bench_cmd->add_subcommand("datasets", "benchmark edge-list datasets");
  DatasetConfig datasets;
  std::string datasets_out;
  LoadFlags dataset_flags;
  dataset_flags.symmetrize = true;  // repository lists are typically undirected
  datasets_cmd->add_option("paths", datasets.paths, "dataset files")->required();
  datasets_cmd->add_option("--level", datasets.level, "heuristic level");
  datasets_cmd->add_option("--reps", datasets.reps, "endpoint draws per dataset");
  datasets_cmd->add_option("--seed", datasets.seed, "master seed");
  datasets_cmd->add_option("--top-degree", datasets.top_degree_pool,
                           "endpoint pool: this many highest-degree vertices");
  datasets_cmd->add_option("--out", datasets_out, "CSV output file");
  add_load_flags(datasets_cmd, dataset_flags);
  datasets_cmd->callback([&] {
    datasets.load = dataset_flags.options();
    maybe_write_csv(run_dataset_bench(datasets), datasets_out);
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const flowpart::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
