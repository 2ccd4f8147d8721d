#include <sstream>

#include "doctest.h"
#include "flowpart/io.hpp"
#include "helpers.hpp"

using namespace flowpart;

namespace {

LoadedGraph load_text(const std::string& text, const LoadOptions& options = {}) {
  std::istringstream in(text);
  return read_edge_list(in, options, "test");
}

}  // namespace

TEST_CASE("plain unweighted list, 1-based auto detection") {
  const auto loaded = load_text("1 2\n2 3\n");
  CHECK(loaded.graph.vertex_count() == 3);
  CHECK(loaded.graph.edge_count() == 2);
  CHECK(loaded.graph.edge(0).capacity == 1);
  CHECK(loaded.report.resolved_base == 1);
  CHECK(loaded.report.id_offset == 1);
}

TEST_CASE("zero id forces base 0 under auto") {
  const auto loaded = load_text("0 1\n1 2\n");
  CHECK(loaded.graph.vertex_count() == 3);
  CHECK(loaded.report.resolved_base == 0);
  CHECK(loaded.report.id_offset == 0);
}

TEST_CASE("comments and blank lines are skipped") {
  const auto loaded = load_text("% a comment\n# another\n\n  \n1 2 5\n");
  CHECK(loaded.graph.edge_count() == 1);
  CHECK(loaded.graph.edge(0).capacity == 5);
}

TEST_CASE("MatrixMarket header and dimension line are skipped") {
  const auto loaded = load_text(
      "%%MatrixMarket matrix coordinate integer general\n"
      "% produced by an exporter\n"
      "3 3 2\n"
      "1 2 4\n"
      "2 3 6\n");
  CHECK(loaded.report.matrix_market);
  CHECK(loaded.graph.vertex_count() == 3);
  CHECK(loaded.graph.edge_count() == 2);
  CHECK(loaded.graph.edge(0).capacity == 4);
}

TEST_CASE("non-integer weights round half-up and clamp to 1") {
  const auto loaded = load_text("1 2 2.5\n2 3 0.2\n3 4 3.7\n1 4 -2\n");
  REQUIRE(loaded.graph.edge_count() == 4);
  // edges sorted by (u, v) in 0-based internal ids
  CHECK(loaded.graph.edge(0).capacity == 3);  // 1->2: 2.5 rounds up
  CHECK(loaded.graph.edge(1).capacity == 1);  // 1->4: -2 clamps
  CHECK(loaded.graph.edge(2).capacity == 1);  // 2->3: 0.2 clamps
  CHECK(loaded.graph.edge(3).capacity == 4);  // 3->4: 3.7 rounds
  CHECK(loaded.report.rounded_weights == 4);  // -2 counts: it is clamped
}

TEST_CASE("weight handling modes") {
  const LoadOptions ignore{.weights = WeightMode::ignore, .default_capacity = 9};
  CHECK(load_text("1 2 5\n", ignore).graph.edge(0).capacity == 9);

  const LoadOptions required{.weights = WeightMode::required};
  CHECK_THROWS_AS(load_text("1 2\n", required), Error);

  // automatic: mixed lines
  const auto loaded = load_text("1 2\n2 3 7\n", LoadOptions{.default_capacity = 2});
  CHECK(loaded.graph.edge(0).capacity == 2);
  CHECK(loaded.graph.edge(1).capacity == 7);
}

TEST_CASE("parallel duplicate lines merge by summation") {
  const auto loaded = load_text("1 2 3\n1 2 4\n");
  CHECK(loaded.graph.edge_count() == 1);
  CHECK(loaded.graph.edge(0).capacity == 7);
  CHECK(loaded.report.merged_edge_count == 1);
}

TEST_CASE("self-loop lines are dropped and counted") {
  const auto loaded = load_text("1 1 5\n1 2 3\n");
  CHECK(loaded.graph.edge_count() == 1);
  CHECK(loaded.report.self_loops_dropped == 1);
}

TEST_CASE("symmetrize adds missing reverse edges only") {
  const auto loaded = load_text("1 2 3\n2 1 9\n2 3 4\n", LoadOptions{.symmetrize = true});
  // 1<->2 already mutual (kept as-is), 2->3 gains 3->2 with equal capacity.
  REQUIRE(loaded.graph.edge_count() == 4);
  CHECK(loaded.graph.edge(0) == Edge{0, 1, 3});
  CHECK(loaded.graph.edge(1) == Edge{1, 0, 9});
  CHECK(loaded.graph.edge(2) == Edge{1, 2, 4});
  CHECK(loaded.graph.edge(3) == Edge{2, 1, 4});
  CHECK(loaded.report.undirected_pair_count == 2);
  CHECK(loaded.report.merged_edge_count == 3);
}

TEST_CASE("malformed input reports the line number") {
  try {
    load_text("1 2\nnot numbers\n");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse_error);
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }
  CHECK_THROWS_AS(load_text("1\n"), Error);
  CHECK_THROWS_AS(load_text("1 -2\n"), Error);
}

TEST_CASE("empty input is an error") {
  try {
    load_text("% only comments\n");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::no_edges);
  }
}

TEST_CASE("unreadable file is an error") {
  try {
    static_cast<void>(load_edge_list("/nonexistent/file.edges"));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::io_unreadable);
  }
}

TEST_CASE("explicit 1-based option rejects id 0") {
  CHECK_THROWS_AS(load_text("0 1\n", LoadOptions{.index_base = IndexBase::one}), Error);
}

TEST_CASE("load, serialize, reload is idempotent") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    // Random file content, including 1-based ids and duplicates.
    Rng rng(detail::mix64(seed ^ 0xabcdef));
    std::ostringstream file;
    const int n = 5 + static_cast<int>(rng.bounded(10));
    const int lines = 5 + static_cast<int>(rng.bounded(30));
    for (int i = 0; i < lines; ++i) {
      const auto u = 1 + rng.bounded(static_cast<std::uint64_t>(n));
      const auto v = 1 + rng.bounded(static_cast<std::uint64_t>(n));
      file << u << ' ' << v << ' ' << 1 + rng.bounded(10) << '\n';
    }
    LoadedGraph first;
    try {
      first = load_text(file.str());
    } catch (const Error&) {
      continue;  // all-self-loop draw; nothing to check
    }
    const std::string serialized = to_edge_list(first.graph);
    const auto second = load_text(serialized);
    CHECK(first.graph == second.graph);
    CHECK(to_edge_list(second.graph) == serialized);
  }
}
