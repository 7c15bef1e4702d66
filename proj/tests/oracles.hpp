#pragma once

// Slow reference implementations used only by the tests. Each one computes
// a quantity the library also computes, by a different algorithm, so the two
// can be checked against each other.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "laser/graph.hpp"

namespace oracle {

/// Number of walks of length exactly `length` from `from` to `to` in the
/// self-loop-augmented graph, by explicit enumeration. Exponential in
/// `length`; keep graphs tiny.
inline std::uint64_t count_walks(const laser::Graph& g, laser::NodeId from,
                                 laser::NodeId to, int length) {
  if (length == 0) return from == to ? 1 : 0;
  std::uint64_t total = count_walks(g, from, to, length - 1);
  for (laser::NodeId w : g.neighbors(from)) {
    total += count_walks(g, w, to, length - 1);
  }
  return total;
}

/// All-pairs shortest paths by Floyd-Warshall.
inline std::vector<std::vector<std::int32_t>> all_pairs_distances(
    const laser::Graph& g) {
  const int n = g.node_count();
  const std::int32_t inf = laser::kUnreached;
  std::vector<std::vector<std::int32_t>> d(n, std::vector<std::int32_t>(n, inf));
  for (int v = 0; v < n; ++v) {
    d[v][v] = 0;
    for (laser::NodeId w : g.neighbors(v)) d[v][w] = 1;
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (d[i][k] == inf) continue;
      for (int j = 0; j < n; ++j) {
        if (d[k][j] == inf) continue;
        const std::int32_t via = d[i][k] + d[k][j];
        if (via < d[i][j]) d[i][j] = via;
      }
    }
  }
  return d;
}

/// Effective resistance by a grounded Laplacian solve instead of the
/// pseudoinverse: fix node 0 at potential 0, inject a unit current at u and
/// extract it at v, and read off the potential difference.
inline double resistance_by_solve(const laser::Graph& g, laser::NodeId u,
                                  laser::NodeId v) {
  const int n = g.node_count();
  if (u == v) return 0.0;
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (laser::NodeId a = 0; a < n; ++a) {
    lap(a, a) = static_cast<double>(g.degree(a));
    for (laser::NodeId b : g.neighbors(a)) lap(a, b) = -1.0;
  }
  Eigen::MatrixXd grounded = lap.block(1, 1, n - 1, n - 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n - 1);
  if (u != 0) rhs(u - 1) += 1.0;
  if (v != 0) rhs(v - 1) -= 1.0;
  Eigen::VectorXd potential = grounded.ldlt().solve(rhs);
  const double pu = u == 0 ? 0.0 : potential(u - 1);
  const double pv = v == 0 ? 0.0 : potential(v - 1);
  return pu - pv;
}

/// All unordered pairs at shortest-path distance exactly `radius`.
inline std::vector<std::pair<laser::NodeId, laser::NodeId>> pairs_at_distance(
    const laser::Graph& g, std::int32_t radius) {
  const auto d = all_pairs_distances(g);
  std::vector<std::pair<laser::NodeId, laser::NodeId>> out;
  for (laser::NodeId u = 0; u < g.node_count(); ++u) {
    for (laser::NodeId v = u + 1; v < g.node_count(); ++v) {
      if (d[u][v] == radius) out.emplace_back(u, v);
    }
  }
  return out;
}

/// Largest finite pairwise distance; kUnreached when disconnected.
inline std::int32_t diameter(const laser::Graph& g) {
  const auto d = all_pairs_distances(g);
  std::int32_t best = 0;
  for (laser::NodeId u = 0; u < g.node_count(); ++u) {
    for (laser::NodeId v = u + 1; v < g.node_count(); ++v) {
      if (d[u][v] == laser::kUnreached) return laser::kUnreached;
      best = std::max(best, d[u][v]);
    }
  }
  return best;
}

}  // namespace oracle
