#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace laser {

using NodeId = std::int32_t;

/// Sentinel for node pairs beyond the computed horizon or in different
/// components. Serialized as -1 in JSON reports.
inline constexpr std::int32_t kUnreached = std::numeric_limits<std::int32_t>::max();

/// Undirected simple graph over dense node ids 0..n-1 with compact
/// sorted-neighbor (CSR) adjacency. Immutable after construction and safe to
/// share across threads.
class Graph {
public:
  Graph() = default;

  /// Builds a graph from an undirected edge list. Edges are symmetrized and
  /// deduplicated; self-loops and out-of-range endpoints are rejected.
  static Graph from_edges(NodeId node_count,
                          std::span<const std::pair<NodeId, NodeId>> edges);

  NodeId node_count() const noexcept { return n_; }

  /// Number of undirected edges.
  std::int64_t edge_count() const noexcept { return m_; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v],
            targets_.data() + offsets_[v + 1]};
  }

  NodeId degree(NodeId v) const {
    return static_cast<NodeId>(offsets_[v + 1] - offsets_[v]);
  }

  /// Adjacency test by binary search over the sorted neighbor list.
  bool has_edge(NodeId u, NodeId v) const;

  /// All undirected edges as (u, v) pairs with u < v, lexicographically sorted.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  bool operator==(const Graph& other) const = default;

private:
  NodeId n_ = 0;
  std::int64_t m_ = 0;
  std::vector<std::int64_t> offsets_;  // size n_ + 1
  std::vector<NodeId> targets_;        // size 2 * m_
};

/// All-pairs shortest-walk distances, possibly truncated at a horizon.
/// Entries beyond the horizon (or across components) are kUnreached.
class DistanceMatrix {
public:
  DistanceMatrix() = default;
  DistanceMatrix(NodeId n, std::int32_t horizon)
      : n_(n), horizon_(horizon), d_(static_cast<std::size_t>(n) * n, kUnreached) {}

  NodeId size() const noexcept { return n_; }
  std::int32_t horizon() const noexcept { return horizon_; }

  std::int32_t operator()(NodeId i, NodeId j) const {
    return d_[static_cast<std::size_t>(i) * n_ + j];
  }
  std::int32_t& operator()(NodeId i, NodeId j) {
    return d_[static_cast<std::size_t>(i) * n_ + j];
  }

  std::span<const std::int32_t> row(NodeId i) const {
    return {d_.data() + static_cast<std::size_t>(i) * n_, static_cast<std::size_t>(n_)};
  }

  /// True when no entry is kUnreached (full horizon on a connected graph).
  bool fully_finite() const;

private:
  NodeId n_ = 0;
  std::int32_t horizon_ = kUnreached;
  std::vector<std::int32_t> d_;
};

/// Walk counts (A + I)^k. Counts are exact integers while they fit a double;
/// beyond that only the relative ordering of entries is meaningful.
class ConnectivityMatrix {
public:
  ConnectivityMatrix() = default;
  explicit ConnectivityMatrix(NodeId n)
      : n_(n), w_(static_cast<std::size_t>(n) * n, 0.0) {}

  NodeId size() const noexcept { return n_; }

  double operator()(NodeId i, NodeId j) const {
    return w_[static_cast<std::size_t>(i) * n_ + j];
  }
  double& operator()(NodeId i, NodeId j) {
    return w_[static_cast<std::size_t>(i) * n_ + j];
  }

  std::span<const double> row(NodeId i) const {
    return {w_.data() + static_cast<std::size_t>(i) * n_, static_cast<std::size_t>(n_)};
  }

private:
  NodeId n_ = 0;
  std::vector<double> w_;
};

/// Parses the standard edge-list format: one "u v" pair per line, `#` starts
/// a comment line, duplicates ignored. Node count is 1 + max id. Throws
/// std::invalid_argument with the offending line number on bad input.
Graph parse_edge_list(std::string_view text);

/// Inverse of parse_edge_list; emits one "u v" line (u < v) per edge in
/// lexicographic order.
std::string serialize_edge_list(const Graph& g);

/// Single-source shortest-walk distances by BFS, truncated at `horizon`.
std::vector<std::int32_t> bfs_distances(const Graph& g, NodeId source,
                                        std::int32_t horizon = kUnreached);

/// All-pairs distances; row v equals bfs_distances(g, v, horizon).
DistanceMatrix distance_matrix(const Graph& g, std::int32_t horizon = kUnreached);

/// (A + I)^k by repeated multiplication. Requires k >= 1.
ConnectivityMatrix walk_count_matrix(const Graph& g, int k);

/// Row v of (A + I)^k written into `row`, using `scratch` as workspace; both
/// spans must have length n. walk_count_matrix is this applied to every row,
/// so streaming callers see bit-identical counts.
void walk_count_row(const Graph& g, NodeId v, int k, std::span<double> row,
                    std::span<double> scratch);

/// One in-place multiplication step row' = row * (A + I), accumulating
/// neighbor sums in ascending id order. Shared by the dense matrix-power and
/// the per-row streaming paths so both produce identical values.
void walk_row_step(const Graph& g, std::span<const double> row, std::span<double> out);

bool is_connected(const Graph& g);

}  // namespace laser
