#include "laser/generators.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "laser/rng.hpp"

namespace laser {

std::string to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::kPath: return "path";
    case GraphKind::kCycle: return "cycle";
    case GraphKind::kClique: return "clique";
    case GraphKind::kLollipop: return "lollipop";
    case GraphKind::kErdosRenyi: return "erdos-renyi";
  }
  throw std::invalid_argument("unknown graph kind");
}

GraphKind graph_kind_from_string(const std::string& s) {
  if (s == "path") return GraphKind::kPath;
  if (s == "cycle") return GraphKind::kCycle;
  if (s == "clique") return GraphKind::kClique;
  if (s == "lollipop") return GraphKind::kLollipop;
  if (s == "erdos-renyi") return GraphKind::kErdosRenyi;
  throw std::invalid_argument("unknown graph kind '" + s + "'");
}

void GeneratorSpec::validate() const {
  switch (kind) {
    case GraphKind::kPath:
    case GraphKind::kClique:
      if (nodes < 1) throw std::invalid_argument("need at least 1 node");
      break;
    case GraphKind::kCycle:
      if (nodes < 3) throw std::invalid_argument("a cycle needs at least 3 nodes");
      break;
    case GraphKind::kLollipop:
      if (chain_length < 1) throw std::invalid_argument("lollipop chain length must be at least 1");
      if (nodes < 3) throw std::invalid_argument("lollipop clique needs at least 3 nodes");
      break;
    case GraphKind::kErdosRenyi: {
      if (nodes < 1) throw std::invalid_argument("need at least 1 node");
      if (edge_probability && avg_degree) {
        throw std::invalid_argument("give either an edge probability or an average degree, not both");
      }
      if (!edge_probability && !avg_degree) {
        throw std::invalid_argument("an edge probability or an average degree is required");
      }
      const double p = edge_probability ? *edge_probability
                                        : *avg_degree / static_cast<double>(nodes);
      if (!(p > 0.0 && p <= 1.0)) {
        throw std::invalid_argument("edge probability must lie in (0, 1]");
      }
      break;
    }
  }
}

namespace {

Graph build(NodeId n, std::vector<std::pair<NodeId, NodeId>> edges) {
  return Graph::from_edges(n, edges);
}

}  // namespace

Graph generate(const GeneratorSpec& spec) {
  spec.validate();
  std::vector<std::pair<NodeId, NodeId>> edges;
  switch (spec.kind) {
    case GraphKind::kPath: {
      for (NodeId v = 0; v + 1 < spec.nodes; ++v) edges.emplace_back(v, v + 1);
      return build(spec.nodes, std::move(edges));
    }
    case GraphKind::kCycle: {
      for (NodeId v = 0; v + 1 < spec.nodes; ++v) edges.emplace_back(v, v + 1);
      edges.emplace_back(spec.nodes - 1, 0);
      return build(spec.nodes, std::move(edges));
    }
    case GraphKind::kClique: {
      for (NodeId u = 0; u < spec.nodes; ++u) {
        for (NodeId v = u + 1; v < spec.nodes; ++v) edges.emplace_back(u, v);
      }
      return build(spec.nodes, std::move(edges));
    }
    case GraphKind::kLollipop: {
      const NodeId chain = spec.chain_length;
      const NodeId total = chain + spec.nodes;
      for (NodeId v = 0; v < chain; ++v) edges.emplace_back(v, v + 1);
      for (NodeId u = chain; u < total; ++u) {
        for (NodeId v = u + 1; v < total; ++v) edges.emplace_back(u, v);
      }
      return build(total, std::move(edges));
    }
    case GraphKind::kErdosRenyi: {
      const double p = spec.edge_probability
                           ? *spec.edge_probability
                           : *spec.avg_degree / static_cast<double>(spec.nodes);
      for (NodeId u = 0; u < spec.nodes; ++u) {
        for (NodeId v = u + 1; v < spec.nodes; ++v) {
          const double draw = uniform_unit(
              counter_hash(spec.seed, static_cast<std::uint64_t>(u),
                           static_cast<std::uint64_t>(v)));
          if (draw < p) edges.emplace_back(u, v);
        }
      }
      return build(spec.nodes, std::move(edges));
    }
  }
  throw std::invalid_argument("unknown graph kind");
}

}  // namespace laser
