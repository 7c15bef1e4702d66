#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "laser/graph.hpp"
#include "laser/measures.hpp"
#include "laser/snapshot.hpp"

namespace laser {

/// All nodes at shortest-path distance exactly `radius` from `center` in the
/// original graph, ascending by node id. The center itself is excluded.
struct Orbit {
  NodeId center = 0;
  std::int32_t radius = 0;
  std::vector<NodeId> members;
};

/// Reads one orbit out of a precomputed locality matrix. An empty member
/// list is valid (the radius may exceed the center's eccentricity).
Orbit orbit_of(const DistanceMatrix& locality, NodeId center,
               std::int32_t radius);

/// Deterministic per-candidate tie-break noise, keyed on
/// (seed, level, center, candidate) so selection is reproducible under any
/// scheduling of centers.
struct TieBreakNoise {
  std::uint64_t seed = 0;
  std::int32_t level = 0;
  double sigma = 1e-9;

  /// Gaussian draw of scale sigma for one (center, candidate) slot.
  double operator()(NodeId center, NodeId candidate) const;
};

/// Picks round(rho * |orbit|) members with the lowest noised scores, raised
/// to one pick when `min_one` is set and the orbit is non-empty, capped at
/// the orbit size. `scores` aligns with `orbit.members`.
std::vector<NodeId> select_from_orbit(const Orbit& orbit,
                                      std::span<const double> scores,
                                      double rho, bool min_one,
                                      const TieBreakNoise& noise);

/// Runs one selection round at the given radius for every node, scoring
/// candidates by walk counts (mu-guided mode) or by noise alone (uniform
/// mode). Emits level (radius - 1) directed records.
RelationalEdgeSet rewire_level(const Graph& g, const MeasurePair& measures,
                               std::int32_t radius,
                               const RewireConfig& config);

/// Wall-clock split of a rewiring run: measure computation (distances and
/// walk counts) versus candidate selection.
struct RewireTimings {
  double measure_ms = 0.0;
  double select_ms = 0.0;
};

/// Memory strategy for laser_rewire. kDense materializes n x n measure
/// matrices; kRowStreaming recomputes per-row BFS distances and walk counts
/// on the fly and never allocates a full matrix. Both produce identical
/// sequences; kAuto switches on node count.
enum class RewireEngine { kAuto, kDense, kRowStreaming };

/// Builds the full snapshot sequence: levels 1..L, where level l adds edges
/// between nodes at original distance l + 1. Measures are taken once on the
/// input graph and reused across levels. rho = 0 or L = 0 yields a sequence
/// with no levels. Disconnected inputs get a stderr warning and are rewired
/// per component (unreachable pairs are never candidates).
SnapshotSequence laser_rewire(const Graph& g, const RewireConfig& config,
                              RewireTimings* timings = nullptr,
                              RewireEngine engine = RewireEngine::kAuto);

/// Baseline: repeatedly adds the non-adjacent pair with the highest
/// effective resistance (ties broken toward the smallest id pair). Throws
/// std::invalid_argument when the graph has no room for `num_edges` more
/// edges, std::runtime_error when disconnected.
Graph spectral_greedy_add(const Graph& g, int num_edges);

}  // namespace laser
