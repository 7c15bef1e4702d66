#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "laser/graph.hpp"
#include "laser/snapshot.hpp"

namespace laser {

/// Node features, one row per node.
using FeatureMatrix = Eigen::MatrixXd;

enum class Activation { kIdentity, kRelu };

/// Per-layer, per-level square weight matrices. Applied per node as W * x_u
/// (features are rows of the FeatureMatrix, weights act on the left of the
/// per-node column vector). Level slot 0 is the base-graph aggregation;
/// slots 1..L match the relational levels, so a plain GCN has one slot.
struct ModelWeights {
  Activation activation = Activation::kIdentity;
  std::vector<std::vector<Eigen::MatrixXd>> per_layer;  // [layer][level slot]

  int layers() const { return static_cast<int>(per_layer.size()); }
  int level_count() const;
  int width() const;
  void validate() const;

  /// Identity matrices everywhere; products have unit norm. `levels` counts
  /// the slots including the base level.
  static ModelWeights identity(int layers, int levels, int width,
                               Activation activation = Activation::kIdentity);

  /// Entries drawn uniformly from (-a, a) with a = sqrt(3 / width), keyed on
  /// (seed, layer, level, entry) so results are reproducible.
  static ModelWeights seeded_uniform(int layers, int levels, int width,
                                     std::uint64_t seed,
                                     Activation activation = Activation::kIdentity);
};

/// Per-node aggregation degrees. counts[0][i] = 1 + deg(i) on the base
/// graph; counts[l][i] for l >= 1 is node i's directed level-l out-degree,
/// floored at 1 so normalization never divides by zero.
struct RelationalDegrees {
  std::vector<std::vector<std::int64_t>> counts;
};

RelationalDegrees relational_degrees(const SnapshotSequence& seq);

/// Symmetrically normalized adjacency D^{-1/2} A D^{-1/2}; with
/// `self_loops`, A + I is normalized by D + I instead.
Eigen::MatrixXd normalized_adjacency(const Graph& g, bool self_loops);

/// A multi-level graph convolution as a stack of dense aggregation
/// operators: one layer maps X to act(sum_l ops[l] * X * W_l^T).
struct GcnSystem {
  std::vector<Eigen::MatrixXd> ops;

  int level_count() const { return static_cast<int>(ops.size()); }
  NodeId node_count() const;
};

/// Single-operator system on the plain graph, with or without self-loop
/// normalization.
GcnSystem plain_gcn_system(const Graph& g, bool self_loops);

/// Operators of the rewired convolution: ops[0] is the self-loop-normalized
/// base adjacency, ops[l] the level-l relational aggregation where row v
/// spreads over v's directed selections u with weight
/// (d_{v,l} d_{u,l})^{-1/2} from relational_degrees.
GcnSystem laser_gcn_system(const SnapshotSequence& seq);

/// Runs `w.layers()` rounds of X <- act(sum_l ops[l] X W_l^T). Throws
/// std::invalid_argument on any shape mismatch.
FeatureMatrix gcn_forward(const GcnSystem& sys, const FeatureMatrix& x,
                          const ModelWeights& w);

/// Forward pass of the rewired convolution; with an empty level list this
/// equals the plain self-loop GCN.
FeatureMatrix laser_gcn_forward(const SnapshotSequence& seq,
                                const FeatureMatrix& x,
                                const ModelWeights& w);

/// d x_target / d x_source after all layers, by central finite differences
/// with step 1e-5 around the given input.
Eigen::MatrixXd jacobian_fd(const GcnSystem& sys, const FeatureMatrix& x,
                            const ModelWeights& w, NodeId source,
                            NodeId target);

/// Exact Jacobian of the identity-activation (linear) forward map, computed
/// by pushing basis inputs through the network. Throws when the activation
/// is not identity.
Eigen::MatrixXd jacobian_exact(const GcnSystem& sys, const ModelWeights& w,
                               NodeId source, NodeId target);

/// Settings of the sensitivity analysis: the Bernoulli success probability
/// of the ReLU-derivative model, the node pair under study, and the layer
/// count.
struct SensitivityConfig {
  double rho_relu = 1.0;
  NodeId source = 0;
  NodeId target = 0;
  int layers = 1;
  void validate() const;
};

/// Closed-form expected Jacobian norm of a plain GCN under the
/// Bernoulli-ReLU model with unit-norm weight products:
/// rho_relu * (A_hat^layers)_{target,source} with A_hat the normalized
/// adjacency without self-loops. Zero whenever layers < d(source, target).
double expected_jacobian_norm(const Graph& g, NodeId source, NodeId target,
                              int layers, double rho_relu);

/// Both sides of the sensitivity lower bound for a single added shortcut.
struct SensitivityBound {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// Checks the shortcut sensitivity bound on a pair (source, target) joined
/// by a unique shortest path of length r: installing one relational edge
/// from source to the path node j at distance `shortcut_distance` = l must
/// give
///   rho * c * (A_hat^{r-l})_{j,target}
///     >= (d_min^l) * c * rho * max_{m<=r} (A_hat^m)_{source,target}
/// with c = (d_{source,l-1} d_{j,l-1})^{-1/2}. Level l-1 degrees are the
/// realized single-edge degrees (1 each) for l >= 2 and the self-loop base
/// degrees for l = 1. Throws std::invalid_argument when the pair is
/// unreachable, the shortest path is not unique, or the shortcut distance
/// is outside [1, r).
SensitivityBound sensitivity_lower_bound_check(const Graph& g,
                                               std::int32_t shortcut_distance,
                                               const SensitivityConfig& cfg);

}  // namespace laser
