#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "laser/graph.hpp"

namespace laser {

/// Connectivity and locality measures of one input graph: locality is the
/// distance matrix truncated at the horizon, connectivity the walk-count
/// matrix (A + I)^k.
struct MeasurePair {
  DistanceMatrix locality;
  ConnectivityMatrix connectivity;
};

/// Computes both measures with clipped matrix powers: boolean reachability
/// powers of A + I accumulate nodes at distance exactly r into the locality
/// matrix for r = 1..horizon, and the k-th walk-count power gives the
/// connectivity. Dense in n^2 memory; intended for desk-scale graphs.
MeasurePair compute_mu_nu(const Graph& g, std::int32_t horizon, int walk_k);

/// Moore-Penrose pseudoinverse of the combinatorial Laplacian L = D - A via
/// dense symmetric eigendecomposition (eigenvalues below 1e-10 treated as
/// null space). Throws std::runtime_error for disconnected graphs.
class LaplacianPseudoinverse {
public:
  explicit LaplacianPseudoinverse(const Graph& g);

  /// R(u, v) = (e_u - e_v)^T L+ (e_u - e_v); zero when u == v.
  double resistance(NodeId u, NodeId v) const;

  /// Commute time CT(u, v) = 2 |E| R(u, v).
  double commute_time(NodeId u, NodeId v) const;

  /// Sum of R(u, v) over unordered pairs, computed as n * trace(L+).
  double total_resistance() const;

  const Eigen::MatrixXd& matrix() const { return pinv_; }

private:
  Eigen::MatrixXd pinv_;
  std::int64_t edge_count_ = 0;
};

double effective_resistance(const Graph& g, NodeId u, NodeId v);
double commute_time(const Graph& g, NodeId u, NodeId v);
double total_effective_resistance(const Graph& g);

/// Second-smallest eigenvalue of the normalized Laplacian
/// D^{-1/2} (D - A) D^{-1/2}. Requires n >= 2 and no isolated nodes.
double spectral_gap(const Graph& g);

/// Frobenius norm of the entrywise difference of two fully finite distance
/// matrices of equal dimension.
double frobenius_deviation(const DistanceMatrix& a, const DistanceMatrix& b);

/// Evaluation metrics of a rewiring run. Fields are nullopt when the input
/// graph does not admit them (disconnected input), with `warning` set.
struct MetricsReport {
  NodeId n = 0;
  std::int64_t m = 0;
  std::optional<double> spectral_gap;
  std::optional<double> total_effective_resistance;
  std::vector<std::optional<double>> total_er_per_level;   // levels 0..L
  std::vector<std::optional<double>> frobenius_per_level;  // levels 1..L
  std::vector<std::int64_t> added_edges_per_level;         // levels 1..L
  std::map<std::string, double> timings_ms;
  std::string warning;
};

/// JSON with keys n, m, spectral_gap, total_er, total_er_per_level,
/// frobenius_per_level, added_edges_per_level, timings_ms, warning.
/// Floats carry 12 significant digits; absent metrics serialize as null.
std::string metrics_report_json(const MetricsReport& report);

}  // namespace laser
