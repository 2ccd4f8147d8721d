#include "flowpart/generator.hpp"

#include <cstdint>

#include "flowpart/rng.hpp"

namespace flowpart {

GeneratedGraph generate(const GeneratorConfig& cfg) {
  if (cfg.clusters < 1 || cfg.nodes_per_cluster < 1) {
    throw Error(Errc::bad_config, "clusters and nodes_per_cluster must be >= 1");
  }
  if (!(cfg.inp >= 0.0 && cfg.inp <= 1.0) || !(cfg.outp >= 0.0 && cfg.outp <= 1.0)) {
    throw Error(Errc::bad_config, "edge probabilities must lie in [0, 1]");
  }
  if (cfg.weight_min < 1 || cfg.weight_max < cfg.weight_min) {
    throw Error(Errc::bad_config, "weight range must be non-empty with minimum >= 1");
  }
  const std::int64_t n64 =
      static_cast<std::int64_t>(cfg.clusters) * static_cast<std::int64_t>(cfg.nodes_per_cluster);
  if (n64 > std::numeric_limits<VertexId>::max()) {
    throw Error(Errc::bad_config, "vertex count overflows");
  }
  const auto n = static_cast<VertexId>(n64);

  GeneratedGraph out;
  out.labels.resize(static_cast<std::size_t>(n));
  for (VertexId v = 0; v < n; ++v) {
    out.labels[static_cast<std::size_t>(v)] = v / cfg.nodes_per_cluster;
  }

  // Topology and weights use separate substreams; one topology draw per
  // unordered pair regardless of outcome, so the draw sequence is a pure
  // function of n.
  Rng topology = Rng::substream(cfg.seed, Stream::topology);
  Rng weights = Rng::substream(cfg.seed, Stream::weights);
  const auto weight_span = static_cast<std::uint64_t>(cfg.weight_max - cfg.weight_min + 1);

  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      const double p = out.labels[static_cast<std::size_t>(u)] ==
                               out.labels[static_cast<std::size_t>(v)]
                           ? cfg.inp
                           : cfg.outp;
      if (!topology.bernoulli(p)) continue;
      const Flow w = cfg.weight_min + static_cast<Flow>(weights.bounded(weight_span));
      // One weight per undirected pair, materialized in both directions so
      // flow semantics match the undirected interpretation.
      edges.push_back({u, v, w});
      edges.push_back({v, u, w});
    }
  }

  out.graph = build_graph(n, edges);
  return out;
}

}  // namespace flowpart
