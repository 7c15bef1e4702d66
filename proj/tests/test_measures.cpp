#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "laser/generators.hpp"
#include "laser/measures.hpp"
#include "oracles.hpp"

using laser::Graph;
using laser::NodeId;

namespace {

constexpr double kTol = 1e-9;

Graph path_graph(NodeId n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph::from_edges(n, edges);
}

Graph clique_graph(NodeId n) {
  laser::GeneratorSpec s;
  s.kind = laser::GraphKind::kClique;
  s.nodes = n;
  return laser::generate(s);
}

Graph connected_er(NodeId n, double avg_degree, std::uint64_t& seed) {
  laser::GeneratorSpec s;
  s.kind = laser::GraphKind::kErdosRenyi;
  s.nodes = n;
  s.avg_degree = avg_degree;
  for (;; ++seed) {
    s.seed = seed;
    Graph g = laser::generate(s);
    if (laser::is_connected(g)) {
      ++seed;
      return g;
    }
  }
}

}  // namespace

TEST_CASE("measures: locality and connectivity come from the same horizon sweep") {
  const Graph g = path_graph(6);
  const auto mp = laser::compute_mu_nu(g, 3, 2);
  CHECK(mp.locality(0, 3) == 3);
  CHECK(mp.locality(0, 4) == laser::kUnreached);
  CHECK(mp.locality(2, 2) == 0);
  const auto walks = laser::walk_count_matrix(g, 2);
  for (NodeId u = 0; u < 6; ++u) {
    for (NodeId v = 0; v < 6; ++v) CHECK(mp.connectivity(u, v) == walks(u, v));
  }
}

TEST_CASE("measures: path resistance adds in series") {
  const Graph g = path_graph(4);
  CHECK(laser::effective_resistance(g, 0, 3) == doctest::Approx(3.0).epsilon(kTol));
  CHECK(laser::commute_time(g, 0, 3) == doctest::Approx(18.0).epsilon(kTol));
  CHECK(laser::effective_resistance(g, 1, 1) == 0.0);
}

TEST_CASE("measures: complete graph resistance is two over n") {
  for (NodeId n = 3; n <= 10; ++n) {
    const Graph g = clique_graph(n);
    const laser::LaplacianPseudoinverse pinv(g);
    CHECK(pinv.resistance(0, n - 1) ==
          doctest::Approx(2.0 / static_cast<double>(n)).epsilon(kTol));
  }
}

TEST_CASE("measures: pendant edge adds one unit of resistance") {
  std::vector<std::pair<NodeId, NodeId>> edges{{0, 1}, {1, 2}, {0, 2}, {0, 3}};
  const Graph g = Graph::from_edges(4, edges);
  const laser::LaplacianPseudoinverse pinv(g);
  CHECK(pinv.resistance(3, 0) == doctest::Approx(1.0).epsilon(kTol));
  CHECK(pinv.resistance(3, 1) == doctest::Approx(1.0 + 2.0 / 3.0).epsilon(kTol));
}

TEST_CASE("measures: commute time is twice edge count times resistance") {
  std::uint64_t seed = 0;
  const Graph g = connected_er(40, 5.0, seed);
  const laser::LaplacianPseudoinverse pinv(g);
  for (NodeId u = 0; u < 10; ++u) {
    for (NodeId v = u + 1; v < 10; ++v) {
      CHECK(pinv.commute_time(u, v) ==
            doctest::Approx(2.0 * static_cast<double>(g.edge_count()) *
                            pinv.resistance(u, v))
                .epsilon(kTol));
    }
  }
}

TEST_CASE("measures: pseudoinverse agrees with a grounded solve") {
  std::uint64_t seed = 10;
  for (int i = 0; i < 4; ++i) {
    const Graph g = connected_er(25, 4.0, seed);
    const laser::LaplacianPseudoinverse pinv(g);
    for (NodeId u = 0; u < g.node_count(); u += 3) {
      for (NodeId v = u + 1; v < g.node_count(); v += 5) {
        CHECK(pinv.resistance(u, v) ==
              doctest::Approx(oracle::resistance_by_solve(g, u, v)).epsilon(kTol));
      }
    }
  }
}

TEST_CASE("measures: total resistance matches the pairwise sum") {
  const Graph k3 = clique_graph(3);
  CHECK(laser::total_effective_resistance(k3) == doctest::Approx(2.0).epsilon(kTol));
  CHECK(laser::total_effective_resistance(path_graph(3)) ==
        doctest::Approx(4.0).epsilon(kTol));

  std::uint64_t seed = 20;
  const Graph g = connected_er(30, 4.0, seed);
  const laser::LaplacianPseudoinverse pinv(g);
  double pairwise = 0.0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (NodeId v = u + 1; v < g.node_count(); ++v) pairwise += pinv.resistance(u, v);
  }
  CHECK(pinv.total_resistance() == doctest::Approx(pairwise).epsilon(kTol));
}

TEST_CASE("measures: resistance requires a connected graph") {
  std::vector<std::pair<NodeId, NodeId>> edges{{0, 1}, {2, 3}};
  const Graph g = Graph::from_edges(4, edges);
  CHECK_THROWS_AS((void)laser::total_effective_resistance(g), std::runtime_error);
  CHECK_THROWS_AS(laser::LaplacianPseudoinverse{g}, std::runtime_error);
}

TEST_CASE("measures: spectral gap closed forms") {
  CHECK(laser::spectral_gap(clique_graph(4)) ==
        doctest::Approx(4.0 / 3.0).epsilon(kTol));
  for (NodeId n = 3; n <= 8; ++n) {
    CHECK(laser::spectral_gap(clique_graph(n)) ==
          doctest::Approx(static_cast<double>(n) / (n - 1.0)).epsilon(kTol));
  }
  laser::GeneratorSpec cycle;
  cycle.kind = laser::GraphKind::kCycle;
  cycle.nodes = 4;
  CHECK(laser::spectral_gap(laser::generate(cycle)) ==
        doctest::Approx(1.0).epsilon(kTol));
}

TEST_CASE("measures: spectral gap vanishes across components") {
  std::vector<std::pair<NodeId, NodeId>> edges{{0, 1}, {2, 3}};
  const Graph g = Graph::from_edges(4, edges);
  CHECK(std::abs(laser::spectral_gap(g)) < kTol);
}

TEST_CASE("measures: spectral gap rejects isolated nodes and single nodes") {
  std::vector<std::pair<NodeId, NodeId>> edges{{0, 1}};
  CHECK_THROWS_AS((void)laser::spectral_gap(Graph::from_edges(3, edges)),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)laser::spectral_gap(Graph::from_edges(1, {})),
                  std::invalid_argument);
}

TEST_CASE("measures: frobenius deviation of a single shortcut") {
  const Graph before = path_graph(3);
  std::vector<std::pair<NodeId, NodeId>> edges{{0, 1}, {1, 2}, {0, 2}};
  const Graph after = Graph::from_edges(3, edges);
  const auto da = laser::distance_matrix(before);
  const auto db = laser::distance_matrix(after);
  CHECK(laser::frobenius_deviation(da, db) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(kTol));
  CHECK(laser::frobenius_deviation(da, da) == 0.0);
}

TEST_CASE("measures: frobenius deviation rejects bad inputs") {
  const auto d3 = laser::distance_matrix(path_graph(3));
  const auto d4 = laser::distance_matrix(path_graph(4));
  CHECK_THROWS_AS((void)laser::frobenius_deviation(d3, d4), std::invalid_argument);
  const auto truncated = laser::distance_matrix(path_graph(4), 1);
  CHECK_THROWS_AS((void)laser::frobenius_deviation(d4, truncated),
                  std::invalid_argument);
}

TEST_CASE("measures: adding an edge never raises any resistance") {
  std::uint64_t seed = 30;
  const Graph g = connected_er(20, 3.0, seed);
  const laser::LaplacianPseudoinverse before(g);
  auto edges = g.edges();
  NodeId u = 0;
  NodeId v = 0;
  for (NodeId a = 0; a < g.node_count() && v == 0; ++a) {
    for (NodeId b = a + 1; b < g.node_count(); ++b) {
      if (!g.has_edge(a, b)) {
        u = a;
        v = b;
        break;
      }
    }
  }
  REQUIRE(v != 0);
  edges.emplace_back(u, v);
  const Graph augmented = Graph::from_edges(g.node_count(), edges);
  const laser::LaplacianPseudoinverse after(augmented);
  for (NodeId a = 0; a < g.node_count(); ++a) {
    for (NodeId b = a + 1; b < g.node_count(); ++b) {
      CHECK(after.resistance(a, b) <= before.resistance(a, b) + kTol);
    }
  }
  CHECK(after.total_resistance() < before.total_resistance());
}

TEST_CASE("measures: report serialization keeps twelve significant digits") {
  laser::MetricsReport report;
  report.n = 3;
  report.m = 2;
  report.spectral_gap = 1.0 / 3.0;
  report.total_effective_resistance = 4.0;
  report.total_er_per_level = {4.0, std::nullopt};
  report.frobenius_per_level = {std::sqrt(2.0)};
  report.added_edges_per_level = {1};
  report.timings_ms["total"] = 1.25;
  report.warning = "";

  const auto j = nlohmann::json::parse(laser::metrics_report_json(report));
  CHECK(j["n"] == 3);
  CHECK(j["m"] == 2);
  CHECK(j["spectral_gap"] == doctest::Approx(0.333333333333).epsilon(1e-12));
  CHECK(j["total_er"] == 4.0);
  CHECK(j["total_er_per_level"][1].is_null());
  CHECK(j["frobenius_per_level"][0] == doctest::Approx(1.41421356237).epsilon(1e-11));
  CHECK(j["added_edges_per_level"][0] == 1);
  CHECK(j["timings_ms"]["total"] == 1.25);
  CHECK_FALSE(j.contains("warning"));

  report.warning = "disconnected input";
  report.spectral_gap = std::nullopt;
  const auto k = nlohmann::json::parse(laser::metrics_report_json(report));
  CHECK(k["warning"] == "disconnected input");
  CHECK(k["spectral_gap"].is_null());
}
