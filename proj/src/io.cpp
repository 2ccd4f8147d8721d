#include "flowpart/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace flowpart {

namespace {

constexpr std::int64_t kMaxVertexRange = 50'000'000;

struct RawEdge {
  std::int64_t u = 0;
  std::int64_t v = 0;
  Flow capacity = 1;
};

[[noreturn]] void parse_fail(const std::string& name, std::int64_t line_no,
                             const std::string& why) {
  throw Error(Errc::parse_error,
              name + ":" + std::to_string(line_no) + ": " + why);
}

bool parse_int(std::string_view token, std::int64_t& out) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_weight(std::string_view token, double& out) {
  try {
    std::size_t used = 0;
    out = std::stod(std::string(token), &used);
    return used == token.size() && std::isfinite(out);
  } catch (const std::exception&) {
    return false;
  }
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

}  // namespace

LoadedGraph read_edge_list(std::istream& in, const LoadOptions& options, const std::string& name) {
  if (options.default_capacity < 1) {
    throw Error(Errc::bad_config, "default_capacity must be >= 1");
  }

  LoadReport report;
  std::vector<RawEdge> raw;
  std::string line;
  std::int64_t line_no = 0;
  bool saw_zero_id = false;
  bool skipped_mm_dimensions = false;
  std::int64_t min_id = std::numeric_limits<std::int64_t>::max();
  std::int64_t max_id = std::numeric_limits<std::int64_t>::min();

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("%%MatrixMarket", 0) == 0) {
      report.matrix_market = true;
      continue;
    }
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '%' || line[first] == '#') continue;
    if (report.matrix_market && !skipped_mm_dimensions) {
      // First non-comment line after a MatrixMarket header is the dimension
      // line, not an edge.
      skipped_mm_dimensions = true;
      continue;
    }

    const auto tokens = split_ws(line);
    if (tokens.size() < 2) {
      parse_fail(name, line_no, "expected 'u v' or 'u v w'");
    }
    std::int64_t u = 0, v = 0;
    if (!parse_int(tokens[0], u) || !parse_int(tokens[1], v)) {
      parse_fail(name, line_no, "endpoints must be integers");
    }
    if (u < 0 || v < 0) {
      parse_fail(name, line_no, "vertex ids must be non-negative");
    }

    Flow capacity = options.default_capacity;
    if (options.weights == WeightMode::required && tokens.size() < 3) {
      parse_fail(name, line_no, "weight column required but missing");
    }
    if (options.weights != WeightMode::ignore && tokens.size() >= 3) {
      double w = 0.0;
      if (!parse_weight(tokens[2], w)) {
        parse_fail(name, line_no, "weight is not a number");
      }
      const double rounded = std::floor(w + 0.5);  // half-up
      capacity = static_cast<Flow>(std::max(1.0, rounded));
      if (rounded != w || rounded < 1.0) ++report.rounded_weights;
    }

    ++report.edge_lines;
    if (u == v) {
      // The graph type rejects self-loops and they cannot carry s-t flow;
      // drop the line but account for it.
      ++report.self_loops_dropped;
      continue;
    }
    saw_zero_id = saw_zero_id || u == 0 || v == 0;
    min_id = std::min({min_id, u, v});
    max_id = std::max({max_id, u, v});
    raw.push_back({u, v, capacity});
  }
  if (in.bad()) {
    throw Error(Errc::io_unreadable, name + ": read failure");
  }
  if (raw.empty()) {
    throw Error(Errc::no_edges, name + ": no edges found");
  }
  if (max_id - min_id + 1 > kMaxVertexRange) {
    parse_fail(name, line_no, "vertex id range too large");
  }

  switch (options.index_base) {
    case IndexBase::automatic:
      report.resolved_base = saw_zero_id ? 0 : 1;
      break;
    case IndexBase::zero:
      report.resolved_base = 0;
      break;
    case IndexBase::one:
      report.resolved_base = 1;
      if (saw_zero_id) {
        throw Error(Errc::parse_error, name + ": vertex id 0 present in a 1-based file");
      }
      break;
  }
  report.id_offset = min_id;

  const auto vertex_count = static_cast<VertexId>(max_id - min_id + 1);
  std::map<std::pair<VertexId, VertexId>, Flow> merged;
  for (const RawEdge& e : raw) {
    const auto u = static_cast<VertexId>(e.u - min_id);
    const auto v = static_cast<VertexId>(e.v - min_id);
    merged[{u, v}] += e.capacity;
  }
  report.merged_edge_count = static_cast<std::int64_t>(merged.size());
  for (const auto& [key, cap] : merged) {
    if (key.first < key.second || !merged.count({key.second, key.first})) {
      ++report.undirected_pair_count;
    }
  }

  if (options.symmetrize) {
    report.symmetrized = true;
    std::vector<std::pair<std::pair<VertexId, VertexId>, Flow>> reversed;
    for (const auto& [key, cap] : merged) {
      if (!merged.count({key.second, key.first})) {
        reversed.push_back({{key.second, key.first}, cap});
      }
    }
    merged.insert(reversed.begin(), reversed.end());
  }

  std::vector<Edge> edges;
  edges.reserve(merged.size());
  for (const auto& [key, cap] : merged) {
    edges.push_back({key.first, key.second, cap});
  }

  LoadedGraph out;
  out.graph = build_graph(vertex_count, edges);
  out.report = report;
  return out;
}

LoadedGraph load_edge_list(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::io_unreadable, path + ": cannot open for reading");
  }
  return read_edge_list(in, options, path);
}

void save_edge_list(const CapacitatedGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(Errc::io_unreadable, path + ": cannot open for writing");
  }
  write_edge_list(g, out);
  if (!out) {
    throw Error(Errc::io_unreadable, path + ": write failure");
  }
}

}  // namespace flowpart
