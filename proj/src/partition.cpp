#include "flowpart/partition.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

#include "flowpart/rng.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace flowpart {

namespace {

// Sibling recursion subtrees become tasks once a part is this large.
constexpr std::size_t kMinTaskVertices = 2048;

// Undirected, unweighted view: {u,v} adjacent when either direction exists.
struct UndirectedView {
  std::vector<std::int64_t> offset;
  std::vector<VertexId> nbr;  // per-vertex lists in ascending id order

  std::span<const VertexId> neighbors(VertexId v) const {
    return {nbr.data() + offset[static_cast<std::size_t>(v)],
            nbr.data() + offset[static_cast<std::size_t>(v) + 1]};
  }
};

UndirectedView symmetrized_view(const CapacitatedGraph& g) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  pairs.reserve(static_cast<std::size_t>(g.edge_count()));
  for (const Edge& e : g.edges()) {
    pairs.emplace_back(std::min(e.from, e.to), std::max(e.from, e.to));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  const auto n = static_cast<std::size_t>(g.vertex_count());
  UndirectedView view;
  view.offset.assign(n + 1, 0);
  for (const auto& [a, b] : pairs) {
    ++view.offset[static_cast<std::size_t>(a) + 1];
    ++view.offset[static_cast<std::size_t>(b) + 1];
  }
  for (std::size_t v = 0; v < n; ++v) view.offset[v + 1] += view.offset[v];
  view.nbr.resize(2 * pairs.size());
  std::vector<std::int64_t> pos(view.offset.begin(), view.offset.end() - 1);
  // Lexicographic pair order interleaves each vertex's lower and higher
  // neighbors in ascending order, so the lists come out sorted.
  for (const auto& [a, b] : pairs) {
    view.nbr[static_cast<std::size_t>(pos[static_cast<std::size_t>(a)]++)] = b;
    view.nbr[static_cast<std::size_t>(pos[static_cast<std::size_t>(b)]++)] = a;
  }
  return view;
}

// Reusable global->local maps. Entries are valid only where stamp matches
// the owning recursion node's path; sibling tasks touch disjoint vertices.
struct KlScratch {
  std::vector<std::int32_t> local_of;
  std::vector<std::uint64_t> stamp;
};

struct KlOutcome {
  std::vector<std::uint8_t> side;  // indexed like the part span
  int cut = 0;
  int initial_cut = 0;
  std::vector<int> pass_cuts;
};

// One Kernighan-Lin bisection of the vertices in `part` (ascending ids,
// size >= 2) against the shared undirected view. Gains are tracked in
// doubly-linked gain buckets; each pass tentatively swaps best-gain pairs
// with locking, then keeps the best prefix.
KlOutcome kl_bisect(const UndirectedView& view, std::span<const VertexId> part,
                    std::uint64_t path, Rng rng, const KlOptions& options, KlScratch& scratch) {
  const auto m = static_cast<std::int32_t>(part.size());
  assert(m >= 2);

  for (std::int32_t i = 0; i < m; ++i) {
    scratch.stamp[static_cast<std::size_t>(part[i])] = path;
    scratch.local_of[static_cast<std::size_t>(part[i])] = i;
  }

  // Part-local adjacency in local ids; lists stay sorted.
  std::vector<std::int64_t> off(static_cast<std::size_t>(m) + 1, 0);
  for (std::int32_t i = 0; i < m; ++i) {
    for (VertexId w : view.neighbors(part[static_cast<std::size_t>(i)])) {
      if (scratch.stamp[static_cast<std::size_t>(w)] == path) ++off[static_cast<std::size_t>(i) + 1];
    }
  }
  for (std::int32_t i = 0; i < m; ++i) off[static_cast<std::size_t>(i) + 1] += off[static_cast<std::size_t>(i)];
  std::vector<std::int32_t> adj(static_cast<std::size_t>(off[static_cast<std::size_t>(m)]));
  {
    std::vector<std::int64_t> pos(off.begin(), off.end() - 1);
    for (std::int32_t i = 0; i < m; ++i) {
      for (VertexId w : view.neighbors(part[static_cast<std::size_t>(i)])) {
        if (scratch.stamp[static_cast<std::size_t>(w)] == path) {
          adj[static_cast<std::size_t>(pos[static_cast<std::size_t>(i)]++)] =
              scratch.local_of[static_cast<std::size_t>(w)];
        }
      }
    }
  }
  auto nbrs = [&](std::int32_t v) {
    return std::span<const std::int32_t>(adj.data() + off[static_cast<std::size_t>(v)],
                                         adj.data() + off[static_cast<std::size_t>(v) + 1]);
  };

  std::int32_t maxdeg = 0;
  for (std::int32_t v = 0; v < m; ++v) {
    maxdeg = std::max(maxdeg, static_cast<std::int32_t>(nbrs(v).size()));
  }

  // Seeded random balanced start; for odd sizes a coin picks the larger side.
  std::vector<std::int32_t> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  std::int32_t size0 = m / 2;
  if (m % 2 == 1 && rng.bounded(2) == 1) ++size0;
  std::vector<std::uint8_t> side(static_cast<std::size_t>(m));
  for (std::int32_t idx = 0; idx < m; ++idx) {
    side[static_cast<std::size_t>(order[static_cast<std::size_t>(idx)])] = idx < size0 ? 0 : 1;
  }

  auto count_cut = [&]() {
    int cut = 0;
    for (std::int32_t v = 0; v < m; ++v) {
      for (std::int32_t w : nbrs(v)) {
        if (w > v && side[static_cast<std::size_t>(v)] != side[static_cast<std::size_t>(w)]) ++cut;
      }
    }
    return cut;
  };

  KlOutcome outcome;
  int cut = count_cut();
  outcome.initial_cut = cut;

  const std::int32_t nbuckets = 2 * maxdeg + 1;
  std::vector<std::int32_t> head(static_cast<std::size_t>(2 * nbuckets));
  std::vector<std::int32_t> nxt(static_cast<std::size_t>(m)), prv(static_cast<std::size_t>(m));
  std::vector<std::int32_t> gain_of(static_cast<std::size_t>(m));
  std::vector<std::uint8_t> locked(static_cast<std::size_t>(m));
  std::int32_t hi[2] = {-1, -1};

  auto bucket_of = [&](std::int32_t v) {
    return static_cast<std::size_t>(side[static_cast<std::size_t>(v)]) *
               static_cast<std::size_t>(nbuckets) +
           static_cast<std::size_t>(gain_of[static_cast<std::size_t>(v)] + maxdeg);
  };
  auto bucket_insert = [&](std::int32_t v) {
    const std::size_t b = bucket_of(v);
    nxt[static_cast<std::size_t>(v)] = head[b];
    prv[static_cast<std::size_t>(v)] = -1;
    if (head[b] >= 0) prv[static_cast<std::size_t>(head[b])] = v;
    head[b] = v;
    auto& h = hi[side[static_cast<std::size_t>(v)]];
    h = std::max(h, gain_of[static_cast<std::size_t>(v)] + maxdeg);
  };
  auto bucket_remove = [&](std::int32_t v) {
    const std::size_t b = bucket_of(v);
    if (prv[static_cast<std::size_t>(v)] >= 0) {
      nxt[static_cast<std::size_t>(prv[static_cast<std::size_t>(v)])] =
          nxt[static_cast<std::size_t>(v)];
    } else {
      head[b] = nxt[static_cast<std::size_t>(v)];
    }
    if (nxt[static_cast<std::size_t>(v)] >= 0) {
      prv[static_cast<std::size_t>(nxt[static_cast<std::size_t>(v)])] =
          prv[static_cast<std::size_t>(v)];
    }
  };
  auto adjacent = [&](std::int32_t a, std::int32_t b) {
    const auto la = nbrs(a);
    const auto lb = nbrs(b);
    if (la.size() <= lb.size()) return std::binary_search(la.begin(), la.end(), b);
    return std::binary_search(lb.begin(), lb.end(), a);
  };

  struct Swap {
    std::int32_t a, b;
  };
  std::vector<Swap> swaps;
  swaps.reserve(static_cast<std::size_t>(m) / 2);

  for (int pass = 0; pass < options.max_passes; ++pass) {
    std::fill(head.begin(), head.end(), -1);
    std::fill(locked.begin(), locked.end(), 0);
    hi[0] = hi[1] = -1;
    std::int32_t remaining[2] = {0, 0};
    for (std::int32_t v = 0; v < m; ++v) {
      std::int32_t d = 0;
      for (std::int32_t w : nbrs(v)) {
        d += side[static_cast<std::size_t>(v)] != side[static_cast<std::size_t>(w)] ? 1 : -1;
      }
      gain_of[static_cast<std::size_t>(v)] = d;
      bucket_insert(v);
      ++remaining[side[static_cast<std::size_t>(v)]];
    }

    const std::int32_t steps = std::min(remaining[0], remaining[1]);
    swaps.clear();
    int cum = 0, best = 0;
    std::int32_t best_idx = -1;

    for (std::int32_t step = 0; step < steps; ++step) {
      while (hi[0] >= 0 && head[static_cast<std::size_t>(hi[0])] < 0) --hi[0];
      while (hi[1] >= 0 &&
             head[static_cast<std::size_t>(nbuckets + hi[1])] < 0) --hi[1];
      if (hi[0] < 0 || hi[1] < 0) break;

      // Best unlocked pair maximizing D[a] + D[b] - 2*adjacent(a,b); the
      // bucket scan prunes once no remaining pair can strictly beat the
      // incumbent.
      int best_gain = std::numeric_limits<int>::min();
      std::int32_t best_a = -1, best_b = -1;
      for (std::int32_t da = hi[0]; da >= 0; --da) {
        if (head[static_cast<std::size_t>(da)] < 0) continue;
        const int tier_ub = (da - maxdeg) + (hi[1] - maxdeg);
        if (tier_ub <= best_gain) break;
        for (std::int32_t a = head[static_cast<std::size_t>(da)];
             a >= 0 && best_gain < tier_ub; a = nxt[static_cast<std::size_t>(a)]) {
          for (std::int32_t db = hi[1]; db >= 0; --db) {
            if (head[static_cast<std::size_t>(nbuckets + db)] < 0) continue;
            const int ub = (da - maxdeg) + (db - maxdeg);
            if (ub <= best_gain) break;
            for (std::int32_t b = head[static_cast<std::size_t>(nbuckets + db)]; b >= 0;
                 b = nxt[static_cast<std::size_t>(b)]) {
              const int gain = ub - (adjacent(a, b) ? 2 : 0);
              if (gain > best_gain) {
                best_gain = gain;
                best_a = a;
                best_b = b;
              }
              if (best_gain == ub) break;
            }
            if (best_gain == ub) break;
          }
        }
      }
      if (best_a < 0) break;

      bucket_remove(best_a);
      bucket_remove(best_b);
      locked[static_cast<std::size_t>(best_a)] = 1;
      locked[static_cast<std::size_t>(best_b)] = 1;
      --remaining[0];
      --remaining[1];
      swaps.push_back({best_a, best_b});
      cum += best_gain;
      if (cum > best) {
        best = cum;
        best_idx = step;
      }

      // Update unlocked neighbors as if the pair were already swapped.
      for (std::int32_t locked_v : {best_a, best_b}) {
        const std::uint8_t locked_side = side[static_cast<std::size_t>(locked_v)];
        for (std::int32_t x : nbrs(locked_v)) {
          if (locked[static_cast<std::size_t>(x)]) continue;
          bucket_remove(x);
          gain_of[static_cast<std::size_t>(x)] +=
              side[static_cast<std::size_t>(x)] == locked_side ? 2 : -2;
          bucket_insert(x);
        }
      }
    }

    if (best > 0) {
      for (std::int32_t i = 0; i <= best_idx; ++i) {
        side[static_cast<std::size_t>(swaps[static_cast<std::size_t>(i)].a)] ^= 1;
        side[static_cast<std::size_t>(swaps[static_cast<std::size_t>(i)].b)] ^= 1;
      }
      cut -= best;
      outcome.pass_cuts.push_back(cut);
    } else {
      outcome.pass_cuts.push_back(cut);
      break;
    }
  }

  assert(cut == count_cut());
  outcome.side = std::move(side);
  outcome.cut = cut;
  return outcome;
}

struct RecursionContext {
  const UndirectedView* view = nullptr;
  Partitioning* partitioning = nullptr;
  PartitionTrace* trace = nullptr;
  KlScratch* scratch = nullptr;
  std::uint64_t seed = 0;
  std::int64_t k = 1;
  int total_level = 0;
  RunMode mode = RunMode::serial;
  KlOptions options;
};

void recurse_partition(RecursionContext& ctx, std::vector<VertexId> vertices, int remaining,
                       std::uint64_t path) {
  if (remaining == 0) {
    const auto id = static_cast<std::int32_t>(path - static_cast<std::uint64_t>(ctx.k));
    for (VertexId v : vertices) ctx.partitioning->part_of[static_cast<std::size_t>(v)] = id;
    return;
  }

  Rng rng = Rng::substream(ctx.seed, Stream::partition, path);
  KlOutcome out = kl_bisect(*ctx.view, vertices, path, rng, ctx.options, *ctx.scratch);

  std::vector<VertexId> left, right;
  left.reserve(vertices.size() / 2 + 1);
  right.reserve(vertices.size() / 2 + 1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    (out.side[i] == 0 ? left : right).push_back(vertices[i]);
  }
  assert(std::llabs(static_cast<long long>(left.size()) - static_cast<long long>(right.size())) <= 1);

  if (ctx.trace != nullptr) {
    PartitionTrace::Split& split = ctx.trace->splits[static_cast<std::size_t>(path - 1)];
    split.level = ctx.total_level - remaining + 1;
    split.left_size = left.size();
    split.right_size = right.size();
    split.initial_cut = out.initial_cut;
    split.final_cut = out.cut;
    split.pass_cuts = std::move(out.pass_cuts);
  }

#if defined(_OPENMP)
  if (ctx.mode == RunMode::parallel && vertices.size() >= kMinTaskVertices) {
#pragma omp task shared(ctx) firstprivate(left, remaining, path)
    { recurse_partition(ctx, std::move(left), remaining - 1, 2 * path); }
    recurse_partition(ctx, std::move(right), remaining - 1, 2 * path + 1);
#pragma omp taskwait
    return;
  }
#endif
  recurse_partition(ctx, std::move(left), remaining - 1, 2 * path);
  recurse_partition(ctx, std::move(right), remaining - 1, 2 * path + 1);
}

}  // namespace

Bipartition kernighan_lin(const CapacitatedGraph& g, std::uint64_t seed,
                          const KlOptions& options) {
  if (g.vertex_count() < 2) {
    throw Error(Errc::too_few_vertices, "kernighan_lin requires at least 2 vertices");
  }
  const UndirectedView view = symmetrized_view(g);
  std::vector<VertexId> all(static_cast<std::size_t>(g.vertex_count()));
  std::iota(all.begin(), all.end(), 0);
  KlScratch scratch;
  scratch.local_of.assign(all.size(), -1);
  scratch.stamp.assign(all.size(), 0);

  KlOutcome out =
      kl_bisect(view, all, 1, Rng::substream(seed, Stream::partition, 1), options, scratch);

  Bipartition bp;
  bp.side = std::move(out.side);
  bp.cut_size = out.cut;
  bp.initial_cut_size = out.initial_cut;
  bp.pass_cuts = std::move(out.pass_cuts);
  return bp;
}

Partitioning recursive_partition(const CapacitatedGraph& g, int level, std::uint64_t seed,
                                 RunMode mode, PartitionTrace* trace) {
  if (level < 0 || level > 30) {
    throw Error(Errc::bad_config, "partition level must be in [0, 30]");
  }
  const std::int64_t k = std::int64_t{1} << level;
  if (k > g.vertex_count()) {
    throw Error(Errc::level_too_large, "2^level (" + std::to_string(k) +
                                           ") exceeds vertex count (" +
                                           std::to_string(g.vertex_count()) + ")");
  }

  Partitioning p;
  p.k = static_cast<int>(k);
  p.level = level;
  p.part_of.assign(static_cast<std::size_t>(g.vertex_count()), 0);
  if (trace != nullptr) {
    trace->splits.assign(static_cast<std::size_t>(k - 1), {});
  }

  std::vector<VertexId> all(static_cast<std::size_t>(g.vertex_count()));
  std::iota(all.begin(), all.end(), 0);

  if (level > 0) {
    const UndirectedView view = symmetrized_view(g);
    KlScratch scratch;
    scratch.local_of.assign(all.size(), -1);
    scratch.stamp.assign(all.size(), 0);

    RecursionContext ctx;
    ctx.view = &view;
    ctx.partitioning = &p;
    ctx.trace = trace;
    ctx.scratch = &scratch;
    ctx.seed = seed;
    ctx.k = k;
    ctx.total_level = level;
    ctx.mode = mode;

#if defined(_OPENMP)
    if (mode == RunMode::parallel) {
#pragma omp parallel
#pragma omp single nowait
      recurse_partition(ctx, std::move(all), level, 1);
    } else {
      recurse_partition(ctx, std::move(all), level, 1);
    }
#else
    recurse_partition(ctx, std::move(all), level, 1);
#endif
  }

  p.members.assign(static_cast<std::size_t>(k), {});
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    p.members[static_cast<std::size_t>(p.part_of[static_cast<std::size_t>(v)])].push_back(v);
  }
  return p;
}

std::string partition_csv(const Partitioning& p) {
  std::ostringstream os;
  os << "vertex_id,partition_id\n";
  for (std::size_t v = 0; v < p.part_of.size(); ++v) {
    os << v << ',' << p.part_of[v] << '\n';
  }
  return os.str();
}

}  // namespace flowpart
