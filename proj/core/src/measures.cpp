#include "laser/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "laser/io.hpp"

namespace laser {

namespace {

constexpr double kNullSpaceCutoff = 1e-10;

Eigen::MatrixXd dense_adjacency(const Graph& g) {
  const NodeId n = g.node_count();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId u : g.neighbors(v)) a(v, u) = 1.0;
  }
  return a;
}

}  // namespace

MeasurePair compute_mu_nu(const Graph& g, std::int32_t horizon, int walk_k) {
  if (horizon < 1) {
    throw std::invalid_argument("locality horizon must be at least 1");
  }
  const NodeId n = g.node_count();
  MeasurePair out{DistanceMatrix(n, horizon), walk_count_matrix(g, walk_k)};

  std::vector<double> reach(static_cast<std::size_t>(n));
  std::vector<double> scratch(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) {
    std::fill(reach.begin(), reach.end(), 0.0);
    reach[static_cast<std::size_t>(v)] = 1.0;
    out.locality(v, v) = 0;
    for (std::int32_t r = 1; r <= horizon; ++r) {
      std::copy(reach.begin(), reach.end(), scratch.begin());
      walk_row_step(g, scratch, reach);
      for (NodeId u = 0; u < n; ++u) {
        auto& cell = reach[static_cast<std::size_t>(u)];
        cell = std::min(cell, 1.0);
        if (cell == 1.0 && out.locality(v, u) == kUnreached) {
          out.locality(v, u) = r;
        }
      }
    }
  }
  return out;
}

LaplacianPseudoinverse::LaplacianPseudoinverse(const Graph& g) {
  if (!is_connected(g)) {
    throw std::runtime_error(
        "effective resistance requires a connected graph");
  }
  const NodeId n = g.node_count();
  edge_count_ = g.edge_count();
  Eigen::MatrixXd lap = -dense_adjacency(g);
  for (NodeId v = 0; v < n; ++v) lap(v, v) = static_cast<double>(g.degree(v));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Laplacian eigendecomposition failed");
  }
  Eigen::VectorXd inv = solver.eigenvalues();
  for (Eigen::Index i = 0; i < inv.size(); ++i) {
    inv(i) = inv(i) > kNullSpaceCutoff ? 1.0 / inv(i) : 0.0;
  }
  pinv_ = solver.eigenvectors() * inv.asDiagonal() *
          solver.eigenvectors().transpose();
}

double LaplacianPseudoinverse::resistance(NodeId u, NodeId v) const {
  if (u < 0 || v < 0 || u >= pinv_.rows() || v >= pinv_.rows()) {
    throw std::invalid_argument("node id out of range");
  }
  if (u == v) return 0.0;
  return pinv_(u, u) + pinv_(v, v) - 2.0 * pinv_(u, v);
}

double LaplacianPseudoinverse::commute_time(NodeId u, NodeId v) const {
  return 2.0 * static_cast<double>(edge_count_) * resistance(u, v);
}

double LaplacianPseudoinverse::total_resistance() const {
  return static_cast<double>(pinv_.rows()) * pinv_.trace();
}

double effective_resistance(const Graph& g, NodeId u, NodeId v) {
  return LaplacianPseudoinverse(g).resistance(u, v);
}

double commute_time(const Graph& g, NodeId u, NodeId v) {
  return LaplacianPseudoinverse(g).commute_time(u, v);
}

double total_effective_resistance(const Graph& g) {
  return LaplacianPseudoinverse(g).total_resistance();
}

double spectral_gap(const Graph& g) {
  const NodeId n = g.node_count();
  if (n < 2) {
    throw std::invalid_argument("spectral gap needs at least 2 nodes");
  }
  Eigen::VectorXd inv_sqrt_deg(n);
  for (NodeId v = 0; v < n; ++v) {
    const NodeId d = g.degree(v);
    if (d == 0) {
      throw std::invalid_argument("spectral gap undefined with isolated node " +
                                  std::to_string(v));
    }
    inv_sqrt_deg(v) = 1.0 / std::sqrt(static_cast<double>(d));
  }
  Eigen::MatrixXd lap =
      Eigen::MatrixXd::Identity(n, n) -
      inv_sqrt_deg.asDiagonal() * dense_adjacency(g) * inv_sqrt_deg.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("normalized Laplacian eigendecomposition failed");
  }
  return solver.eigenvalues()(1);
}

double frobenius_deviation(const DistanceMatrix& a, const DistanceMatrix& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("distance matrices differ in dimension");
  }
  double sum = 0.0;
  for (NodeId i = 0; i < a.size(); ++i) {
    for (NodeId j = 0; j < a.size(); ++j) {
      if (a(i, j) == kUnreached || b(i, j) == kUnreached) {
        throw std::invalid_argument(
            "distance matrices must be fully finite for the Frobenius norm");
      }
      const double diff = static_cast<double>(a(i, j)) - b(i, j);
      sum += diff * diff;
    }
  }
  return std::sqrt(sum);
}

std::string metrics_report_json(const MetricsReport& report) {
  nlohmann::json j;
  j["n"] = report.n;
  j["m"] = report.m;
  const auto number_or_null = [](const std::optional<double>& v) {
    return v ? nlohmann::json(round_to_12_digits(*v)) : nlohmann::json(nullptr);
  };
  j["spectral_gap"] = number_or_null(report.spectral_gap);
  j["total_er"] = number_or_null(report.total_effective_resistance);
  j["total_er_per_level"] = nlohmann::json::array();
  for (const auto& v : report.total_er_per_level) {
    j["total_er_per_level"].push_back(number_or_null(v));
  }
  j["frobenius_per_level"] = nlohmann::json::array();
  for (const auto& v : report.frobenius_per_level) {
    j["frobenius_per_level"].push_back(number_or_null(v));
  }
  j["added_edges_per_level"] = report.added_edges_per_level;
  j["timings_ms"] = nlohmann::json::object();
  for (const auto& [name, ms] : report.timings_ms) {
    j["timings_ms"][name] = round_to_12_digits(ms);
  }
  if (!report.warning.empty()) j["warning"] = report.warning;
  return j.dump(2) + "\n";
}

}  // namespace laser
