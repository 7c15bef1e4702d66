#include "laser/graph.hpp"

#include <algorithm>
#include <charconv>
#include <queue>
#include <stdexcept>

namespace laser {

Graph Graph::from_edges(NodeId node_count,
                        std::span<const std::pair<NodeId, NodeId>> edges) {
  if (node_count < 0) {
    throw std::invalid_argument("node count must be non-negative");
  }
  std::vector<std::pair<NodeId, NodeId>> directed;
  directed.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= node_count || v >= node_count) {
      throw std::invalid_argument("edge endpoint out of range: (" +
                                  std::to_string(u) + ", " + std::to_string(v) +
                                  ")");
    }
    if (u == v) {
      throw std::invalid_argument("self-loop rejected at node " +
                                  std::to_string(u));
    }
    directed.emplace_back(u, v);
    directed.emplace_back(v, u);
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()),
                 directed.end());

  Graph g;
  g.n_ = node_count;
  g.m_ = static_cast<std::int64_t>(directed.size()) / 2;
  g.offsets_.assign(static_cast<std::size_t>(node_count) + 1, 0);
  g.targets_.reserve(directed.size());
  for (const auto& [u, v] : directed) {
    g.offsets_[static_cast<std::size_t>(u) + 1]++;
    g.targets_.push_back(v);
  }
  for (NodeId v = 0; v < node_count; ++v) {
    g.offsets_[static_cast<std::size_t>(v) + 1] +=
        g.offsets_[static_cast<std::size_t>(v)];
  }
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  const auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(static_cast<std::size_t>(m_));
  for (NodeId u = 0; u < n_; ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

namespace {

NodeId parse_node_token(std::string_view token, std::size_t line_no) {
  NodeId value = 0;
  const auto* begin = token.data();
  const auto* end = token.data() + token.size();
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc{} || result.ptr != end) {
    throw std::invalid_argument("line " + std::to_string(line_no) +
                                ": expected a node id, got '" +
                                std::string(token) + "'");
  }
  if (value < 0) {
    throw std::invalid_argument("line " + std::to_string(line_no) +
                                ": negative node id");
  }
  return value;
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  NodeId max_id = -1;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      if (j > i) tokens.push_back(line.substr(i, j - i));
      i = j;
    }
    if (tokens.empty()) continue;
    if (tokens.size() != 2) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected 'u v', got " +
                                  std::to_string(tokens.size()) + " tokens");
    }
    const NodeId u = parse_node_token(tokens[0], line_no);
    const NodeId v = parse_node_token(tokens[1], line_no);
    if (u == v) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": self-loop " + std::to_string(u));
    }
    edges.emplace_back(u, v);
    max_id = std::max({max_id, u, v});
  }
  return Graph::from_edges(max_id + 1, edges);
}

std::string serialize_edge_list(const Graph& g) {
  std::string out;
  for (const auto& [u, v] : g.edges()) {
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

bool DistanceMatrix::fully_finite() const {
  return std::none_of(d_.begin(), d_.end(),
                      [](std::int32_t d) { return d == kUnreached; });
}

std::vector<std::int32_t> bfs_distances(const Graph& g, NodeId source,
                                        std::int32_t horizon) {
  if (source < 0 || source >= g.node_count()) {
    throw std::invalid_argument("BFS source out of range");
  }
  std::vector<std::int32_t> dist(static_cast<std::size_t>(g.node_count()),
                                 kUnreached);
  dist[static_cast<std::size_t>(source)] = 0;
  std::queue<NodeId> frontier;
  frontier.push(source);
  while (!frontier.empty()) {
    const NodeId v = frontier.front();
    frontier.pop();
    const std::int32_t dv = dist[static_cast<std::size_t>(v)];
    if (dv >= horizon) continue;
    for (NodeId u : g.neighbors(v)) {
      if (dist[static_cast<std::size_t>(u)] != kUnreached) continue;
      dist[static_cast<std::size_t>(u)] = dv + 1;
      frontier.push(u);
    }
  }
  return dist;
}

DistanceMatrix distance_matrix(const Graph& g, std::int32_t horizon) {
  DistanceMatrix d(g.node_count(), horizon);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto row = bfs_distances(g, v, horizon);
    for (NodeId u = 0; u < g.node_count(); ++u) {
      d(v, u) = row[static_cast<std::size_t>(u)];
    }
  }
  return d;
}

void walk_row_step(const Graph& g, std::span<const double> row,
                   std::span<double> out) {
  const NodeId n = g.node_count();
  for (NodeId j = 0; j < n; ++j) {
    double acc = row[static_cast<std::size_t>(j)];
    for (NodeId u : g.neighbors(j)) {
      acc += row[static_cast<std::size_t>(u)];
    }
    out[static_cast<std::size_t>(j)] = acc;
  }
}

void walk_count_row(const Graph& g, NodeId v, int k, std::span<double> row,
                    std::span<double> scratch) {
  if (k < 1) {
    throw std::invalid_argument("walk length must be at least 1");
  }
  std::fill(row.begin(), row.end(), 0.0);
  row[static_cast<std::size_t>(v)] = 1.0;
  for (NodeId u : g.neighbors(v)) row[static_cast<std::size_t>(u)] = 1.0;
  for (int step = 1; step < k; ++step) {
    std::copy(row.begin(), row.end(), scratch.begin());
    walk_row_step(g, scratch, row);
  }
}

ConnectivityMatrix walk_count_matrix(const Graph& g, int k) {
  if (k < 1) {
    throw std::invalid_argument("walk length must be at least 1");
  }
  const NodeId n = g.node_count();
  ConnectivityMatrix w(n);
  std::vector<double> scratch(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) {
    walk_count_row(g, v, k,
                   std::span<double>(&w(v, 0), static_cast<std::size_t>(n)),
                   scratch);
  }
  return w;
}

bool is_connected(const Graph& g) {
  if (g.node_count() <= 1) return true;
  const auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(),
                      [](std::int32_t d) { return d == kUnreached; });
}

}  // namespace laser
