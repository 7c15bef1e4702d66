#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "laser/graph.hpp"

namespace laser {

enum class RewireMode { kMuGuided, kUniformRandom };

std::string to_string(RewireMode mode);
RewireMode rewire_mode_from_string(const std::string& s);

/// Parameters of a sequential rewiring run.
struct RewireConfig {
  int snapshots = 1;             // L, number of rewiring levels
  double rho_density = 0.1;      // fraction of each orbit to connect
  int walk_k = 8;                // walk length for the connectivity measure
  std::uint64_t seed = 0;
  double tie_sigma = 1e-9;       // tie-break noise scale; must stay below the
                                 // smallest score gap (1 for integer counts)
  bool min_one = true;           // lift per-orbit budgets of 0 to 1
  RewireMode mode = RewireMode::kMuGuided;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// Directed edges added at one locality level. Level l connects sources to
/// targets at original-graph distance exactly l + 1.
struct RelationalEdgeSet {
  int level = 0;
  std::vector<std::vector<NodeId>> targets;  // per-source, ascending

  std::int64_t directed_count() const;
  /// Symmetrized union as undirected (u, v) pairs with u < v, sorted.
  std::vector<std::pair<NodeId, NodeId>> undirected_edges() const;
};

/// A rewiring trajectory: the base graph plus one relational edge set per
/// level, cumulative by construction.
struct SnapshotSequence {
  Graph base;
  std::vector<RelationalEdgeSet> levels;  // levels[i] has level == i + 1
  RewireConfig config;

  int level_count() const { return static_cast<int>(levels.size()); }
};

/// Undirected union of the base edges and the symmetrized added edges of
/// levels 1..up_to. up_to = 0 returns the base graph.
Graph flatten_snapshots(const SnapshotSequence& seq, int up_to);

/// Writes snapshot_<l>.edges files ("u v l" per directed record) and
/// manifest.json into `dir`, creating it if needed.
void write_snapshot_dir(const SnapshotSequence& seq, const std::filesystem::path& dir);

/// Loads a directory produced by write_snapshot_dir. The base graph is read
/// from `base_edges` (the manifest stores only counts and config).
SnapshotSequence load_snapshot_dir(const Graph& base, const std::filesystem::path& dir);

}  // namespace laser
