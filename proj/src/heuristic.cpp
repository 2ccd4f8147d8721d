#include "flowpart/heuristic.hpp"

#include <algorithm>
#include <cassert>
#include <exception>
#include <sstream>

#include "flowpart/maxflow.hpp"
#include "flowpart/rng.hpp"

namespace flowpart {

namespace {

// Below this many edges the budget loop runs serially; spawning threads
// costs more than the work.
constexpr EdgeId kMinParallelEdges = 4096;

VertexId sample_excluding(Rng& rng, std::span<const VertexId> members, VertexId excluded) {
  // members is sorted and contains `excluded`.
  const auto pos = static_cast<std::size_t>(
      std::lower_bound(members.begin(), members.end(), excluded) - members.begin());
  auto idx = static_cast<std::size_t>(rng.bounded(members.size() - 1));
  if (idx >= pos) ++idx;
  return members[idx];
}

std::pair<VertexId, VertexId> sample_distinct(Rng& rng, std::span<const VertexId> members) {
  const auto a = static_cast<std::size_t>(rng.bounded(members.size()));
  auto b = static_cast<std::size_t>(rng.bounded(members.size() - 1));
  if (b >= a) ++b;
  return {members[a], members[b]};
}

}  // namespace

SuperGraph::SuperGraph(int k, std::vector<Flow> budgets, std::vector<std::uint8_t> matrix)
    : k_(k), budgets_(std::move(budgets)), matrix_(std::move(matrix)) {
  removed_.assign(static_cast<std::size_t>(k_), 0);
  arcs_.assign(static_cast<std::size_t>(k_), {});
  for (int a = 0; a < k_; ++a) {
    removed_[static_cast<std::size_t>(a)] = budgets_[static_cast<std::size_t>(a)] == 0 ? 1 : 0;
    for (int b = 0; b < k_; ++b) {
      if (a != b && arc(a, b)) {
        arcs_[static_cast<std::size_t>(a)].push_back(b);
      }
    }
  }
}

void SuperGraph::reduce_along(std::span<const int> path, Flow mu) {
  for (int node : path) {
    Flow& budget = budgets_[static_cast<std::size_t>(node)];
    if (budget == kUnboundedBudget) continue;
    assert(budget >= mu);
    budget -= mu;
    if (budget == 0) removed_[static_cast<std::size_t>(node)] = 1;
  }
}

SuperGraph build_supergraph(const CapacitatedGraph& g, const Partitioning& p,
                            std::span<const Flow> budgets) {
  if (budgets.size() != static_cast<std::size_t>(p.k)) {
    throw Error(Errc::budget_count_mismatch,
                "expected " + std::to_string(p.k) + " budgets, got " +
                    std::to_string(budgets.size()));
  }
  const auto k = static_cast<std::size_t>(p.k);
  std::vector<std::uint8_t> matrix(k * k, 0);
  for (const Edge& e : g.edges()) {
    const auto a = static_cast<std::size_t>(p.part_of[static_cast<std::size_t>(e.from)]);
    const auto b = static_cast<std::size_t>(p.part_of[static_cast<std::size_t>(e.to)]);
    if (a != b) matrix[a * k + b] = 1;
  }
  return SuperGraph(p.k, std::vector<Flow>(budgets.begin(), budgets.end()), std::move(matrix));
}

std::optional<std::vector<int>> shortest_superpath(const SuperGraph& sg, int from, int to) {
  if (sg.removed(from) || sg.removed(to)) return std::nullopt;
  if (from == to) return std::vector<int>{from};

  const auto k = static_cast<std::size_t>(sg.k());
  std::vector<int> parent(k, -1);
  std::vector<std::uint8_t> visited(k, 0);
  std::vector<int> queue;
  queue.reserve(k);
  queue.push_back(from);
  visited[static_cast<std::size_t>(from)] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int u = queue[head];
    for (int v : sg.neighbors(u)) {
      if (visited[static_cast<std::size_t>(v)] || sg.removed(v)) continue;
      visited[static_cast<std::size_t>(v)] = 1;
      parent[static_cast<std::size_t>(v)] = u;
      if (v == to) {
        std::vector<int> path;
        for (int x = to; x != -1; x = parent[static_cast<std::size_t>(x)]) path.push_back(x);
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(v);
    }
  }
  return std::nullopt;
}

std::vector<Flow> partition_flow_budgets(const CapacitatedGraph& g, const Partitioning& p,
                                         VertexId s, VertexId t, std::uint64_t seed,
                                         RunMode mode) {
  const int k = p.k;
  const int source_part = p.part_of[static_cast<std::size_t>(s)];
  const int sink_part = p.part_of[static_cast<std::size_t>(t)];
  std::vector<Flow> budgets(static_cast<std::size_t>(k), 0);

  std::exception_ptr failure;
  const bool parallel = mode == RunMode::parallel && k >= 4 && g.edge_count() >= kMinParallelEdges;
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic) if (parallel)
#else
  (void)parallel;
#endif
  for (int r = 0; r < k; ++r) {
    try {
      const std::vector<VertexId>& members = p.members[static_cast<std::size_t>(r)];
      if (members.size() == 1) {
        // A lone vertex has no internal bottleneck; it only relays flow.
        budgets[static_cast<std::size_t>(r)] = kUnboundedBudget;
        continue;
      }
      Rng rng = Rng::substream(seed, Stream::heuristic_endpoints, static_cast<std::uint64_t>(r));
      VertexId from, to;
      if (r == source_part) {
        from = s;
        to = sample_excluding(rng, members, s);
      } else if (r == sink_part) {
        to = t;
        from = sample_excluding(rng, members, t);
      } else {
        std::tie(from, to) = sample_distinct(rng, members);
      }
      const InducedSubgraph sub = induced_subgraph(g, members);
      budgets[static_cast<std::size_t>(r)] =
          edmonds_karp(sub.graph, sub.local_of(from), sub.local_of(to)).value;
    } catch (...) {
#if defined(_OPENMP)
#pragma omp critical
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return budgets;
}

HeuristicResult heuristic_max_flow(const CapacitatedGraph& g, VertexId s, VertexId t, int level,
                                   std::uint64_t seed, RunMode mode) {
  if (!g.has_vertex(s) || !g.has_vertex(t)) {
    throw Error(Errc::vertex_out_of_range, "source or sink outside vertex range");
  }
  if (s == t) {
    throw Error(Errc::source_equals_sink, "source and sink must differ");
  }

  const Partitioning p = recursive_partition(g, level, seed, mode);

  HeuristicResult result;
  result.level = level;
  result.k = p.k;
  result.seed = seed;
  result.source_partition = p.part_of[static_cast<std::size_t>(s)];
  result.sink_partition = p.part_of[static_cast<std::size_t>(t)];

  if (result.source_partition == result.sink_partition) {
    result.branch = HeuristicBranch::same_cluster;
    const auto& members = p.members[static_cast<std::size_t>(result.source_partition)];
    if (static_cast<VertexId>(members.size()) == g.vertex_count()) {
      // The partition is the whole graph (always so at level 0); extraction
      // would be an identity copy.
      result.value = edmonds_karp(g, s, t).value;
    } else {
      const InducedSubgraph sub = induced_subgraph(g, members);
      result.value = edmonds_karp(sub.graph, sub.local_of(s), sub.local_of(t)).value;
    }
    return result;
  }

  result.branch = HeuristicBranch::cross_cluster;
  result.initial_budgets = partition_flow_budgets(g, p, s, t, seed, mode);

  Flow source_min_capacity = 0;
  for (EdgeId e : g.out_edges(s)) {
    const Flow c = g.edge(e).capacity;
    source_min_capacity = source_min_capacity == 0 ? c : std::min(source_min_capacity, c);
  }

  SuperGraph sg = build_supergraph(g, p, result.initial_budgets);
  const int i = result.source_partition;
  const int j = result.sink_partition;

  // Every iteration either zeroes (and removes) the bottleneck supernode or
  // hits the all-unbounded fallback and stops, so this runs at most k times.
  for (int iter = 0; iter <= p.k; ++iter) {
    const auto path = shortest_superpath(sg, i, j);
    if (!path) break;

    Flow mu = kUnboundedBudget;
    for (int node : *path) mu = std::min(mu, sg.budget(node));
    if (mu == kUnboundedBudget) {
      // Nothing on the path constrains the flow (all singleton partitions).
      // Charge the smallest capacity leaving the source and stop; the
      // supernode model gives no further constraint to exhaust.
      mu = source_min_capacity;
      result.unbounded_fallback_used = true;
      result.value += mu;
      result.steps.push_back({*path, mu});
      break;
    }
    assert(mu > 0);
    result.value += mu;
    result.steps.push_back({*path, mu});
    sg.reduce_along(*path, mu);
  }

  return result;
}

std::string heuristic_record(const HeuristicResult& r) {
  std::ostringstream os;
  os << "flowpart-heuristic-v1\n";
  os << "value=" << r.value << '\n';
  os << "branch="
     << (r.branch == HeuristicBranch::same_cluster ? "same_cluster" : "cross_cluster") << '\n';
  os << "level=" << r.level << '\n';
  os << "k=" << r.k << '\n';
  os << "seed=" << r.seed << '\n';
  os << "source_partition=" << r.source_partition << '\n';
  os << "sink_partition=" << r.sink_partition << '\n';
  os << "unbounded_fallback=" << (r.unbounded_fallback_used ? 1 : 0) << '\n';
  if (r.branch == HeuristicBranch::cross_cluster) {
    os << "budgets=";
    for (std::size_t i = 0; i < r.initial_budgets.size(); ++i) {
      if (i > 0) os << ',';
      if (r.initial_budgets[i] == kUnboundedBudget) {
        os << "inf";
      } else {
        os << r.initial_budgets[i];
      }
    }
    os << '\n';
    for (const SuperPathStep& step : r.steps) {
      os << "path=";
      for (std::size_t i = 0; i < step.path.size(); ++i) {
        if (i > 0) os << '>';
        os << step.path[i];
      }
      os << " mu=" << step.mu << '\n';
    }
  }
  return os.str();
}

}  // namespace flowpart
