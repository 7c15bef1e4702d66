#include "laser/rewire.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>

#include "laser/rng.hpp"

namespace laser {

namespace {

// Above this node count the dense measure matrices stop fitting comfortably
// in memory and laser_rewire switches to the row-streaming engine.
constexpr NodeId kDenseNodeLimit = 2048;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

}  // namespace

Orbit orbit_of(const DistanceMatrix& locality, NodeId center,
               std::int32_t radius) {
  if (radius < 2) {
    throw std::invalid_argument("orbit radius must be at least 2");
  }
  if (locality.horizon() < radius) {
    throw std::invalid_argument("locality horizon ends before the orbit radius");
  }
  Orbit orbit{center, radius, {}};
  for (NodeId u = 0; u < locality.size(); ++u) {
    if (locality(center, u) == radius) orbit.members.push_back(u);
  }
  return orbit;
}

double TieBreakNoise::operator()(NodeId center, NodeId candidate) const {
  const std::uint64_t word =
      counter_hash(seed, static_cast<std::uint64_t>(level),
                   static_cast<std::uint64_t>(center),
                   static_cast<std::uint64_t>(candidate));
  const double u1 = 1.0 - uniform_unit(word);
  const double u2 = uniform_unit(mix64(word));
  return sigma * std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<NodeId> select_from_orbit(const Orbit& orbit,
                                      std::span<const double> scores,
                                      double rho, bool min_one,
                                      const TieBreakNoise& noise) {
  if (scores.size() != orbit.members.size()) {
    throw std::invalid_argument("scores do not align with the orbit members");
  }
  const auto size = static_cast<std::int64_t>(orbit.members.size());
  std::int64_t count = std::llround(rho * static_cast<double>(size));
  if (min_one && count == 0 && size > 0) count = 1;
  count = std::min(count, size);
  if (count <= 0) return {};

  std::vector<std::pair<double, NodeId>> ranked;
  ranked.reserve(orbit.members.size());
  for (std::size_t i = 0; i < orbit.members.size(); ++i) {
    const NodeId member = orbit.members[i];
    ranked.emplace_back(scores[i] + noise(orbit.center, member), member);
  }
  std::sort(ranked.begin(), ranked.end());

  std::vector<NodeId> selected;
  selected.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    selected.push_back(ranked[static_cast<std::size_t>(i)].second);
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

namespace {

std::vector<NodeId> select_for_center(
    const Graph& g, NodeId center, std::int32_t radius,
    std::span<const std::int32_t> dist_row, std::span<const double> walk_row,
    const RewireConfig& config) {
  Orbit orbit{center, radius, {}};
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (dist_row[static_cast<std::size_t>(u)] == radius) {
      orbit.members.push_back(u);
    }
  }
  std::vector<double> scores(orbit.members.size(), 0.0);
  if (config.mode == RewireMode::kMuGuided) {
    for (std::size_t i = 0; i < orbit.members.size(); ++i) {
      scores[i] = walk_row[static_cast<std::size_t>(orbit.members[i])];
    }
  }
  const TieBreakNoise noise{config.seed, radius - 1, config.tie_sigma};
  return select_from_orbit(orbit, scores, config.rho_density, config.min_one,
                           noise);
}

}  // namespace

RelationalEdgeSet rewire_level(const Graph& g, const MeasurePair& measures,
                               std::int32_t radius,
                               const RewireConfig& config) {
  if (measures.locality.size() != g.node_count() ||
      measures.connectivity.size() != g.node_count()) {
    throw std::invalid_argument("measures do not match the graph");
  }
  if (radius < 2 || measures.locality.horizon() < radius) {
    throw std::invalid_argument("radius outside the computed locality horizon");
  }
  RelationalEdgeSet out;
  out.level = radius - 1;
  out.targets.assign(static_cast<std::size_t>(g.node_count()), {});
  for (NodeId v = 0; v < g.node_count(); ++v) {
    out.targets[static_cast<std::size_t>(v)] =
        select_for_center(g, v, radius, measures.locality.row(v),
                          measures.connectivity.row(v), config);
  }
  return out;
}

SnapshotSequence laser_rewire(const Graph& g, const RewireConfig& config,
                              RewireTimings* timings, RewireEngine engine) {
  config.validate();
  if (!is_connected(g)) {
    std::cerr << "warning: input graph is disconnected; rewiring only ever "
                 "connects nodes within a component\n";
  }
  SnapshotSequence seq;
  seq.base = g;
  seq.config = config;
  if (timings) *timings = RewireTimings{};
  if (config.snapshots == 0 || config.rho_density == 0.0) return seq;

  const std::int32_t horizon = config.snapshots + 1;
  if (engine == RewireEngine::kAuto) {
    engine = g.node_count() <= kDenseNodeLimit ? RewireEngine::kDense
                                               : RewireEngine::kRowStreaming;
  }

  if (engine == RewireEngine::kDense) {
    const auto t0 = Clock::now();
    const MeasurePair measures = compute_mu_nu(g, horizon, config.walk_k);
    if (timings) timings->measure_ms = ms_since(t0);
    const auto t1 = Clock::now();
    for (std::int32_t radius = 2; radius <= horizon; ++radius) {
      seq.levels.push_back(rewire_level(g, measures, radius, config));
    }
    if (timings) timings->select_ms = ms_since(t1);
    return seq;
  }

  const NodeId n = g.node_count();
  for (std::int32_t radius = 2; radius <= horizon; ++radius) {
    RelationalEdgeSet level;
    level.level = radius - 1;
    level.targets.assign(static_cast<std::size_t>(n), {});
    seq.levels.push_back(std::move(level));
  }
  std::vector<double> walk_row(static_cast<std::size_t>(n));
  std::vector<double> scratch(static_cast<std::size_t>(n));
  double measure_ms = 0.0;
  double select_ms = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    const auto t0 = Clock::now();
    const auto dist_row = bfs_distances(g, v, horizon);
    walk_count_row(g, v, config.walk_k, walk_row, scratch);
    measure_ms += ms_since(t0);
    const auto t1 = Clock::now();
    for (std::int32_t radius = 2; radius <= horizon; ++radius) {
      seq.levels[static_cast<std::size_t>(radius - 2)]
          .targets[static_cast<std::size_t>(v)] =
          select_for_center(g, v, radius, dist_row, walk_row, config);
    }
    select_ms += ms_since(t1);
  }
  if (timings) {
    timings->measure_ms = measure_ms;
    timings->select_ms = select_ms;
  }
  return seq;
}

Graph spectral_greedy_add(const Graph& g, int num_edges) {
  if (num_edges < 1) {
    throw std::invalid_argument("need at least one edge to add");
  }
  Graph current = g;
  for (int round = 0; round < num_edges; ++round) {
    const NodeId n = current.node_count();
    if (current.edge_count() ==
        static_cast<std::int64_t>(n) * (n - 1) / 2) {
      throw std::invalid_argument("graph is already complete");
    }
    const LaplacianPseudoinverse pinv(current);
    double best = -1.0;
    NodeId best_u = -1;
    NodeId best_v = -1;
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        if (current.has_edge(u, v)) continue;
        const double r = pinv.resistance(u, v);
        if (r > best) {
          best = r;
          best_u = u;
          best_v = v;
        }
      }
    }
    auto edges = current.edges();
    edges.emplace_back(best_u, best_v);
    current = Graph::from_edges(n, edges);
  }
  return current;
}

}  // namespace laser
