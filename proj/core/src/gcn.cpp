#include "laser/gcn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "laser/rng.hpp"

namespace laser {

int ModelWeights::level_count() const {
  return per_layer.empty() ? 0 : static_cast<int>(per_layer.front().size());
}

int ModelWeights::width() const {
  if (per_layer.empty() || per_layer.front().empty()) return 0;
  return static_cast<int>(per_layer.front().front().rows());
}

void ModelWeights::validate() const {
  if (per_layer.empty()) {
    throw std::invalid_argument("a model needs at least one layer");
  }
  const int levels = level_count();
  const int w = width();
  if (levels == 0 || w == 0) {
    throw std::invalid_argument("weight matrices are missing");
  }
  for (const auto& layer : per_layer) {
    if (static_cast<int>(layer.size()) != levels) {
      throw std::invalid_argument("layers disagree on the level count");
    }
    for (const auto& mat : layer) {
      if (mat.rows() != w || mat.cols() != w) {
        throw std::invalid_argument("weight matrices must be square and share one width");
      }
    }
  }
}

ModelWeights ModelWeights::identity(int layers, int levels, int width,
                                    Activation activation) {
  if (layers < 1 || levels < 1 || width < 1) {
    throw std::invalid_argument("layers, levels and width must be positive");
  }
  ModelWeights w;
  w.activation = activation;
  w.per_layer.assign(
      static_cast<std::size_t>(layers),
      std::vector<Eigen::MatrixXd>(static_cast<std::size_t>(levels),
                                   Eigen::MatrixXd::Identity(width, width)));
  return w;
}

ModelWeights ModelWeights::seeded_uniform(int layers, int levels, int width,
                                          std::uint64_t seed,
                                          Activation activation) {
  ModelWeights w = identity(layers, levels, width, activation);
  const double a = std::sqrt(3.0 / width);
  for (int t = 0; t < layers; ++t) {
    for (int l = 0; l < levels; ++l) {
      auto& mat = w.per_layer[static_cast<std::size_t>(t)]
                             [static_cast<std::size_t>(l)];
      for (int i = 0; i < width; ++i) {
        for (int j = 0; j < width; ++j) {
          const double u = uniform_unit(counter_hash(
              seed, static_cast<std::uint64_t>(t),
              static_cast<std::uint64_t>(l),
              static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(width) +
                  static_cast<std::uint64_t>(j)));
          mat(i, j) = a * (2.0 * u - 1.0);
        }
      }
    }
  }
  return w;
}

RelationalDegrees relational_degrees(const SnapshotSequence& seq) {
  const NodeId n = seq.base.node_count();
  RelationalDegrees degrees;
  degrees.counts.emplace_back(static_cast<std::size_t>(n), 0);
  for (NodeId v = 0; v < n; ++v) {
    degrees.counts[0][static_cast<std::size_t>(v)] = 1 + seq.base.degree(v);
  }
  for (const auto& level : seq.levels) {
    auto& counts = degrees.counts.emplace_back(static_cast<std::size_t>(n), 1);
    for (NodeId v = 0; v < n; ++v) {
      const auto out_degree = static_cast<std::int64_t>(
          level.targets[static_cast<std::size_t>(v)].size());
      counts[static_cast<std::size_t>(v)] = std::max<std::int64_t>(1, out_degree);
    }
  }
  return degrees;
}

Eigen::MatrixXd normalized_adjacency(const Graph& g, bool self_loops) {
  const NodeId n = g.node_count();
  Eigen::VectorXd inv_sqrt(n);
  for (NodeId v = 0; v < n; ++v) {
    const double d = static_cast<double>(g.degree(v)) + (self_loops ? 1.0 : 0.0);
    inv_sqrt(v) = d > 0.0 ? 1.0 / std::sqrt(d) : 0.0;
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (NodeId v = 0; v < n; ++v) {
    if (self_loops) a(v, v) = inv_sqrt(v) * inv_sqrt(v);
    for (NodeId u : g.neighbors(v)) {
      a(v, u) = inv_sqrt(v) * inv_sqrt(u);
    }
  }
  return a;
}

NodeId GcnSystem::node_count() const {
  return ops.empty() ? 0 : static_cast<NodeId>(ops.front().rows());
}

GcnSystem plain_gcn_system(const Graph& g, bool self_loops) {
  return GcnSystem{{normalized_adjacency(g, self_loops)}};
}

GcnSystem laser_gcn_system(const SnapshotSequence& seq) {
  const NodeId n = seq.base.node_count();
  const RelationalDegrees degrees = relational_degrees(seq);
  GcnSystem sys;
  sys.ops.push_back(normalized_adjacency(seq.base, true));
  for (std::size_t l = 0; l < seq.levels.size(); ++l) {
    const auto& counts = degrees.counts[l + 1];
    Eigen::MatrixXd op = Eigen::MatrixXd::Zero(n, n);
    for (NodeId v = 0; v < n; ++v) {
      for (NodeId u : seq.levels[l].targets[static_cast<std::size_t>(v)]) {
        op(v, u) = 1.0 / std::sqrt(static_cast<double>(
                             counts[static_cast<std::size_t>(v)] *
                             counts[static_cast<std::size_t>(u)]));
      }
    }
    sys.ops.push_back(std::move(op));
  }
  return sys;
}

FeatureMatrix gcn_forward(const GcnSystem& sys, const FeatureMatrix& x,
                          const ModelWeights& w) {
  w.validate();
  if (sys.ops.empty()) {
    throw std::invalid_argument("the convolution needs at least one operator");
  }
  if (x.rows() != sys.node_count()) {
    throw std::invalid_argument("feature rows do not match the node count");
  }
  if (x.cols() != w.width()) {
    throw std::invalid_argument("feature width does not match the weights");
  }
  if (w.level_count() != sys.level_count()) {
    throw std::invalid_argument("weight level slots do not match the operators");
  }
  FeatureMatrix current = x;
  for (const auto& layer : w.per_layer) {
    FeatureMatrix next = FeatureMatrix::Zero(current.rows(), current.cols());
    for (std::size_t l = 0; l < sys.ops.size(); ++l) {
      next.noalias() += sys.ops[l] * current * layer[l].transpose();
    }
    if (w.activation == Activation::kRelu) {
      next = next.cwiseMax(0.0);
    }
    current = std::move(next);
  }
  return current;
}

FeatureMatrix laser_gcn_forward(const SnapshotSequence& seq,
                                const FeatureMatrix& x,
                                const ModelWeights& w) {
  return gcn_forward(laser_gcn_system(seq), x, w);
}

namespace {

constexpr double kFdStep = 1e-5;

void check_pair(const GcnSystem& sys, NodeId source, NodeId target) {
  if (source < 0 || target < 0 || source >= sys.node_count() ||
      target >= sys.node_count()) {
    throw std::invalid_argument("node id out of range");
  }
}

}  // namespace

Eigen::MatrixXd jacobian_fd(const GcnSystem& sys, const FeatureMatrix& x,
                            const ModelWeights& w, NodeId source,
                            NodeId target) {
  check_pair(sys, source, target);
  const int width = static_cast<int>(x.cols());
  Eigen::MatrixXd jac(width, width);
  FeatureMatrix probe = x;
  for (int b = 0; b < width; ++b) {
    probe(source, b) = x(source, b) + kFdStep;
    const FeatureMatrix plus = gcn_forward(sys, probe, w);
    probe(source, b) = x(source, b) - kFdStep;
    const FeatureMatrix minus = gcn_forward(sys, probe, w);
    probe(source, b) = x(source, b);
    jac.col(b) = (plus.row(target) - minus.row(target)).transpose() /
                 (2.0 * kFdStep);
  }
  return jac;
}

Eigen::MatrixXd jacobian_exact(const GcnSystem& sys, const ModelWeights& w,
                               NodeId source, NodeId target) {
  if (w.activation != Activation::kIdentity) {
    throw std::invalid_argument(
        "the exact Jacobian is only defined for the identity activation");
  }
  check_pair(sys, source, target);
  const int width = w.width();
  Eigen::MatrixXd jac(width, width);
  for (int b = 0; b < width; ++b) {
    FeatureMatrix basis = FeatureMatrix::Zero(sys.node_count(), width);
    basis(source, b) = 1.0;
    const FeatureMatrix out = gcn_forward(sys, basis, w);
    jac.col(b) = out.row(target).transpose();
  }
  return jac;
}

void SensitivityConfig::validate() const {
  if (!(rho_relu > 0.0 && rho_relu <= 1.0)) {
    throw std::invalid_argument("rho_relu must lie in (0, 1]");
  }
  if (layers < 1) {
    throw std::invalid_argument("layer count must be at least 1");
  }
  if (source < 0 || target < 0) {
    throw std::invalid_argument("node ids must be non-negative");
  }
}

double expected_jacobian_norm(const Graph& g, NodeId source, NodeId target,
                              int layers, double rho_relu) {
  if (source < 0 || target < 0 || source >= g.node_count() ||
      target >= g.node_count()) {
    throw std::invalid_argument("node id out of range");
  }
  if (layers < 0) {
    throw std::invalid_argument("layer count must be non-negative");
  }
  const Eigen::MatrixXd a_hat = normalized_adjacency(g, false);
  Eigen::MatrixXd power =
      Eigen::MatrixXd::Identity(g.node_count(), g.node_count());
  for (int i = 0; i < layers; ++i) power = power * a_hat;
  return rho_relu * power(target, source);
}

SensitivityBound sensitivity_lower_bound_check(const Graph& g,
                                               std::int32_t shortcut_distance,
                                               const SensitivityConfig& cfg) {
  cfg.validate();
  const NodeId u = cfg.source;
  const NodeId v = cfg.target;
  if (u >= g.node_count() || v >= g.node_count()) {
    throw std::invalid_argument("node id out of range");
  }
  if (u == v) {
    throw std::invalid_argument("source and target must differ");
  }

  const auto dist = bfs_distances(g, v);
  const std::int32_t r = dist[static_cast<std::size_t>(u)];
  if (r == kUnreached) {
    throw std::invalid_argument("source and target are in different components");
  }
  if (shortcut_distance < 1 || shortcut_distance >= r) {
    throw std::invalid_argument(
        "the shortcut distance must lie strictly between 0 and the pair distance");
  }

  std::vector<std::uint64_t> path_counts(
      static_cast<std::size_t>(g.node_count()), 0);
  path_counts[static_cast<std::size_t>(v)] = 1;
  for (std::int32_t d = 1; d <= r; ++d) {
    for (NodeId w = 0; w < g.node_count(); ++w) {
      if (dist[static_cast<std::size_t>(w)] != d) continue;
      for (NodeId p : g.neighbors(w)) {
        if (dist[static_cast<std::size_t>(p)] == d - 1) {
          path_counts[static_cast<std::size_t>(w)] +=
              path_counts[static_cast<std::size_t>(p)];
        }
      }
    }
  }
  if (path_counts[static_cast<std::size_t>(u)] != 1) {
    throw std::invalid_argument(
        "the bound requires a unique shortest path between the pair");
  }

  NodeId j = u;
  for (std::int32_t d = r; d > shortcut_distance; --d) {
    for (NodeId p : g.neighbors(j)) {
      if (dist[static_cast<std::size_t>(p)] == d - 1) {
        j = p;
        break;
      }
    }
  }

  double d_min = static_cast<double>(g.degree(0));
  for (NodeId w = 1; w < g.node_count(); ++w) {
    d_min = std::min(d_min, static_cast<double>(g.degree(w)));
  }

  double relational_coeff = 1.0;
  if (shortcut_distance == 1) {
    relational_coeff =
        1.0 / std::sqrt(static_cast<double>(1 + g.degree(v)) *
                        static_cast<double>(1 + g.degree(j)));
  }

  const Eigen::MatrixXd a_hat = normalized_adjacency(g, false);
  Eigen::MatrixXd power = a_hat;
  for (std::int32_t i = 1; i < r - shortcut_distance; ++i) power = power * a_hat;
  const double tail = r - shortcut_distance > 0 ? power(j, u) : 1.0;

  SensitivityBound bound;
  bound.lhs = cfg.rho_relu * relational_coeff * tail;

  double best_direct = 0.0;
  Eigen::MatrixXd direct =
      Eigen::MatrixXd::Identity(g.node_count(), g.node_count());
  for (std::int32_t m = 0; m <= r; ++m) {
    if (m > 0) direct = direct * a_hat;
    best_direct = std::max(best_direct, direct(v, u));
  }
  bound.rhs = std::pow(d_min, static_cast<double>(shortcut_distance)) *
              relational_coeff * cfg.rho_relu * best_direct;
  bound.holds = bound.lhs >= bound.rhs;
  return bound;
}

}  // namespace laser
