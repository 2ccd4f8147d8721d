// Compares the OpenMP kernels against their serial reference on one
// generated clustered graph: recursive partitioning, per-partition budget
// flows, and the full heuristic, with exact Edmonds-Karp as the baseline.
// Verifies that serial and parallel outputs are identical while timing them.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "flowpart/bench.hpp"
#include "flowpart/generator.hpp"
#include "flowpart/heuristic.hpp"
#include "flowpart/maxflow.hpp"
#include "flowpart/partition.hpp"

using namespace flowpart;

namespace {

template <typename F>
double median_seconds(int reps, F&& f) {
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(reps));
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    times.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return median(std::move(times));
}

void print_row(const char* name, double serial, double parallel) {
  std::printf("%-28s %12.6f %12.6f %10.2fx\n", name, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flowpart-parbench: serial vs parallel kernel comparison"};
  GeneratorConfig cfg;
  cfg.clusters = 8;
  cfg.nodes_per_cluster = 500;
  cfg.inp = 0.02;
  cfg.outp = 0.002;
  cfg.seed = 1;
  int level = 3;
  int reps = 5;
  app.add_option("--clusters", cfg.clusters, "planted clusters");
  app.add_option("--nodes-per-cluster", cfg.nodes_per_cluster, "vertices per cluster");
  app.add_option("--inp", cfg.inp, "within-cluster edge probability");
  app.add_option("--outp", cfg.outp, "between-cluster edge probability");
  app.add_option("--seed", cfg.seed, "seed");
  app.add_option("--level", level, "partition level, k = 2^level");
  app.add_option("--reps", reps, "timing repetitions (median reported)");
  CLI11_PARSE(app, argc, argv);

  try {
    const auto gen = generate(cfg);
    const CapacitatedGraph& g = gen.graph;
    const auto [s, t] = sample_endpoints_distinct_clusters(gen.labels, cfg.seed, 0);
    std::printf("graph: %d vertices, %d directed edges; s=%d t=%d level=%d\n",
                g.vertex_count(), g.edge_count(), s, t, level);
#if defined(_OPENMP)
    std::printf("openmp: max %d threads\n", omp_get_max_threads());
#else
    std::printf("openmp: compiled out; both columns run serially\n");
#endif

    // Outputs must be identical before timings mean anything.
    const auto part_serial = recursive_partition(g, level, cfg.seed, RunMode::serial);
    const auto part_parallel = recursive_partition(g, level, cfg.seed, RunMode::parallel);
    const auto heur_serial = heuristic_max_flow(g, s, t, level, cfg.seed, RunMode::serial);
    const auto heur_parallel = heuristic_max_flow(g, s, t, level, cfg.seed, RunMode::parallel);
    if (part_serial.part_of != part_parallel.part_of || !(heur_serial == heur_parallel)) {
      std::fprintf(stderr, "FATAL: serial and parallel results differ\n");
      return 2;
    }
    const auto budgets = partition_flow_budgets(g, part_serial, s, t, cfg.seed, RunMode::serial);
    if (budgets != partition_flow_budgets(g, part_serial, s, t, cfg.seed, RunMode::parallel)) {
      std::fprintf(stderr, "FATAL: serial and parallel budgets differ\n");
      return 2;
    }
    std::printf("serial/parallel outputs identical; heuristic value %lld, exact value %lld\n\n",
                static_cast<long long>(heur_serial.value),
                static_cast<long long>(edmonds_karp(g, s, t).value));

    std::printf("%-28s %12s %12s %10s\n", "kernel", "serial s", "parallel s", "speedup");
    print_row("recursive_partition",
              median_seconds(reps, [&] { recursive_partition(g, level, cfg.seed, RunMode::serial); }),
              median_seconds(reps, [&] { recursive_partition(g, level, cfg.seed, RunMode::parallel); }));
    print_row("partition_flow_budgets",
              median_seconds(reps, [&] { partition_flow_budgets(g, part_serial, s, t, cfg.seed, RunMode::serial); }),
              median_seconds(reps, [&] { partition_flow_budgets(g, part_serial, s, t, cfg.seed, RunMode::parallel); }));
    print_row("heuristic_max_flow",
              median_seconds(reps, [&] { heuristic_max_flow(g, s, t, level, cfg.seed, RunMode::serial); }),
              median_seconds(reps, [&] { heuristic_max_flow(g, s, t, level, cfg.seed, RunMode::parallel); }));
    const double exact_time = median_seconds(reps, [&] { edmonds_karp(g, s, t); });
    std::printf("%-28s %12.6f %12s\n", "edmonds_karp (baseline)", exact_time, "-");
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
