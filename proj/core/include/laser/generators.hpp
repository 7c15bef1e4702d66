#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "laser/graph.hpp"

namespace laser {

enum class GraphKind { kPath, kCycle, kClique, kLollipop, kErdosRenyi };

std::string to_string(GraphKind kind);
GraphKind graph_kind_from_string(const std::string& s);

/// Parameters for the deterministic test-graph generators.
///
/// path/cycle/clique use `nodes`. lollipop builds a chain of `chain_length`
/// nodes v_0..v_{L-1} attached to a clique of `nodes` nodes; the junction is
/// the first clique node (global id chain_length), so d(v_0, junction) = L
/// and d(v_0, clique interior) = L + 1. erdos_renyi samples each pair
/// independently with probability `edge_probability` (or avg_degree / n),
/// keyed on (seed, i, j) so the result is independent of evaluation order.
struct GeneratorSpec {
  GraphKind kind = GraphKind::kPath;
  NodeId nodes = 0;                       // n (clique size for lollipop)
  NodeId chain_length = 0;                // lollipop only, L >= 1
  std::optional<double> edge_probability; // erdos_renyi
  std::optional<double> avg_degree;       // erdos_renyi alternative, p = d/n
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on an invalid parameter combination.
  void validate() const;
};

Graph generate(const GeneratorSpec& spec);

}  // namespace laser
