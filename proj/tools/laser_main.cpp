#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "laser/gcn.hpp"
#include "laser/generators.hpp"
#include "laser/graph.hpp"
#include "laser/io.hpp"
#include "laser/measures.hpp"
#include "laser/rewire.hpp"
#include "laser/snapshot.hpp"
#include "laser/version.hpp"

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using laser::NodeId;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

double rounded(double v) { return laser::round_to_12_digits(v); }

/// Records every path a command writes so a failing run can remove its
/// partial outputs before the error propagates.
class OutputTracker {
public:
  void write_file(const fs::path& path, std::string_view content) {
    laser::write_text_file(path, content);
    written_.push_back(path);
  }

  void adopt(const fs::path& path) { written_.push_back(path); }

  void discard_all() noexcept {
    for (const auto& path : written_) {
      std::error_code ec;
      fs::remove(path, ec);
    }
    written_.clear();
  }

private:
  std::vector<fs::path> written_;
};

void emit_report(const nlohmann::json& report, const std::string& out_path,
                 OutputTracker& tracker) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    tracker.write_file(out_path, text);
  }
}

struct GenArgs {
  std::string kind;
  NodeId nodes = 0;
  NodeId chain = 0;
  NodeId clique_size = 0;
  double edge_prob = -1.0;
  double avg_degree = -1.0;
  std::uint64_t seed = 0;
  std::string out;
};

void run_gen(const GenArgs& args, OutputTracker& tracker) {
  laser::GeneratorSpec spec;
  spec.kind = laser::graph_kind_from_string(args.kind);
  spec.seed = args.seed;
  if (spec.kind == laser::GraphKind::kLollipop) {
    if (args.chain <= 0 || args.clique_size <= 0) {
      throw CLI::ValidationError(
          "gen", "--kind lollipop needs --chain and --clique-size");
    }
    spec.chain_length = args.chain;
    spec.nodes = args.clique_size;
  } else {
    if (args.nodes <= 0) {
      throw CLI::ValidationError("gen", "--nodes is required for this kind");
    }
    spec.nodes = args.nodes;
  }
  if (args.edge_prob >= 0.0) spec.edge_probability = args.edge_prob;
  if (args.avg_degree >= 0.0) spec.avg_degree = args.avg_degree;
  spec.validate();

  const auto t0 = Clock::now();
  const laser::Graph g = laser::generate(spec);
  const double generate_ms = ms_since(t0);

  const std::string text = laser::serialize_edge_list(g);
  tracker.write_file(args.out, text);

  nlohmann::json config{{"kind", args.kind}, {"seed", spec.seed}};
  if (spec.kind == laser::GraphKind::kLollipop) {
    config["chain"] = spec.chain_length;
    config["clique_size"] = spec.nodes;
  } else {
    config["nodes"] = spec.nodes;
  }
  if (spec.edge_probability) config["edge_prob"] = *spec.edge_probability;
  if (spec.avg_degree) config["avg_degree"] = *spec.avg_degree;

  nlohmann::json manifest{
      {"command", "gen"},
      {"version", laser::kVersion},
      {"config", config},
      {"seed", spec.seed},
      {"n", g.node_count()},
      {"m", g.edge_count()},
      {"outputs", {{fs::path(args.out).filename().string(),
                    laser::fnv1a64_hex(text)}}},
      {"timings_ms", {{"generate", rounded(generate_ms)}}}};
  tracker.write_file(args.out + ".manifest.json", manifest.dump(2) + "\n");
}

struct RewireArgs {
  std::string in;
  std::string out;
  laser::RewireConfig config;
  std::string mode = "mu";
  std::string engine = "auto";
};

laser::RewireEngine engine_from_string(const std::string& s) {
  if (s == "auto") return laser::RewireEngine::kAuto;
  if (s == "dense") return laser::RewireEngine::kDense;
  if (s == "streaming") return laser::RewireEngine::kRowStreaming;
  throw CLI::ValidationError("--engine",
                             "expected 'auto', 'dense' or 'streaming'");
}

void run_rewire(RewireArgs args, OutputTracker& tracker) {
  args.config.mode = laser::rewire_mode_from_string(args.mode);
  args.config.validate();

  const std::string input_text = laser::read_text_file(args.in);
  const laser::Graph g = laser::parse_edge_list(input_text);

  const auto t0 = Clock::now();
  laser::RewireTimings timings;
  const laser::SnapshotSequence seq = laser::laser_rewire(
      g, args.config, &timings, engine_from_string(args.engine));
  const double total_ms = ms_since(t0);

  laser::write_snapshot_dir(seq, args.out);
  for (const auto& level : seq.levels) {
    tracker.adopt(fs::path(args.out) /
                  ("snapshot_" + std::to_string(level.level) + ".edges"));
  }
  tracker.adopt(fs::path(args.out) / "manifest.json");

  auto manifest = nlohmann::json::parse(
      laser::read_text_file(fs::path(args.out) / "manifest.json"));
  manifest["command"] = "rewire";
  manifest["version"] = laser::kVersion;
  manifest["inputs"] = {{args.in, laser::fnv1a64_hex(input_text)}};
  manifest["timings_ms"] = {{"measure", rounded(timings.measure_ms)},
                            {"select", rounded(timings.select_ms)},
                            {"total", rounded(total_ms)}};
  laser::write_text_file(fs::path(args.out) / "manifest.json",
                         manifest.dump(2) + "\n");
}

struct MetricsArgs {
  std::string in;
  std::string rewired;
  std::string out;
};

void run_metrics(const MetricsArgs& args, OutputTracker& tracker) {
  const laser::Graph g = laser::parse_edge_list(laser::read_text_file(args.in));
  laser::SnapshotSequence seq;
  seq.base = g;
  if (!args.rewired.empty()) {
    seq = laser::load_snapshot_dir(g, args.rewired);
  }

  laser::MetricsReport report;
  report.n = g.node_count();
  report.m = g.edge_count();
  const bool connected = laser::is_connected(g);
  const auto t_total = Clock::now();

  auto t = Clock::now();
  try {
    report.spectral_gap = laser::spectral_gap(g);
  } catch (const std::invalid_argument& e) {
    report.warning = e.what();
  }
  report.timings_ms["spectral_gap"] = rounded(ms_since(t));

  t = Clock::now();
  for (int level = 0; level <= seq.level_count(); ++level) {
    if (connected) {
      report.total_er_per_level.push_back(laser::total_effective_resistance(
          laser::flatten_snapshots(seq, level)));
    } else {
      report.total_er_per_level.push_back(std::nullopt);
    }
  }
  report.total_effective_resistance = report.total_er_per_level.front();
  if (!connected) {
    report.warning =
        "input graph is disconnected; effective resistance and distance "
        "deviations are unavailable";
  }
  report.timings_ms["total_er"] = rounded(ms_since(t));

  t = Clock::now();
  if (connected) {
    const laser::DistanceMatrix base_distances = laser::distance_matrix(g);
    for (int level = 1; level <= seq.level_count(); ++level) {
      report.frobenius_per_level.push_back(laser::frobenius_deviation(
          base_distances,
          laser::distance_matrix(laser::flatten_snapshots(seq, level))));
    }
  } else {
    report.frobenius_per_level.assign(
        static_cast<std::size_t>(seq.level_count()), std::nullopt);
  }
  report.timings_ms["frobenius"] = rounded(ms_since(t));

  for (const auto& level : seq.levels) {
    report.added_edges_per_level.push_back(
        static_cast<std::int64_t>(level.undirected_edges().size()));
  }
  report.timings_ms["total"] = rounded(ms_since(t_total));

  emit_report(nlohmann::json::parse(laser::metrics_report_json(report)),
              args.out, tracker);
}

struct AblateArgs {
  NodeId chain = 12;
  NodeId clique_size = 64;
  double rho = 1.0 / 12.0;
  int seeds = 20;
  std::uint64_t seed = 0;
  std::string out;
};

void run_ablate_lollipop(const AblateArgs& args, OutputTracker& tracker) {
  if (args.seeds < 1) {
    throw CLI::ValidationError("--seeds", "need at least one seed");
  }
  laser::GeneratorSpec spec;
  spec.kind = laser::GraphKind::kLollipop;
  spec.chain_length = args.chain;
  spec.nodes = args.clique_size;
  spec.validate();
  const laser::Graph g = laser::generate(spec);
  const laser::DistanceMatrix base_distances = laser::distance_matrix(g);

  const auto t0 = Clock::now();
  const laser::Graph spectral = laser::spectral_greedy_add(g, 1);
  const double spectral_frobenius = laser::frobenius_deviation(
      base_distances, laser::distance_matrix(spectral));
  const double spectral_ms = ms_since(t0);

  laser::RewireConfig config;
  config.snapshots = 1;
  config.rho_density = args.rho;
  config.min_one = false;

  const auto t1 = Clock::now();
  std::vector<double> deviations;
  double added_sum = 0.0;
  for (int i = 0; i < args.seeds; ++i) {
    config.seed = args.seed + static_cast<std::uint64_t>(i);
    const laser::SnapshotSequence seq = laser::laser_rewire(g, config);
    deviations.push_back(laser::frobenius_deviation(
        base_distances,
        laser::distance_matrix(laser::flatten_snapshots(seq, 1))));
    added_sum +=
        static_cast<double>(seq.levels.front().undirected_edges().size());
  }
  const double laser_ms = ms_since(t1);

  double mean = 0.0;
  for (double d : deviations) mean += d;
  mean /= static_cast<double>(deviations.size());
  double var = 0.0;
  for (double d : deviations) var += (d - mean) * (d - mean);
  const double stddev =
      deviations.size() > 1
          ? std::sqrt(var / static_cast<double>(deviations.size() - 1))
          : 0.0;

  const double l = static_cast<double>(args.chain);
  const double n = static_cast<double>(args.clique_size);
  const double lower_bound =
      std::sqrt((n - 1.0) * (l - 1.0) * (l - 1.0) + (l - 2.0) * (l - 2.0));

  const nlohmann::json report{
      {"chain", args.chain},
      {"clique_size", args.clique_size},
      {"rho", rounded(args.rho)},
      {"seeds", args.seeds},
      {"seed", args.seed},
      {"spectral",
       {{"frobenius", rounded(spectral_frobenius)}, {"added_edges", 1}}},
      {"laser",
       {{"frobenius_mean", rounded(mean)},
        {"frobenius_std", rounded(stddev)},
        {"added_undirected_mean",
         rounded(added_sum / static_cast<double>(args.seeds))}}},
      {"spectral_lower_bound", rounded(lower_bound)},
      {"laser_below_spectral", mean < spectral_frobenius},
      {"timings_ms",
       {{"spectral", rounded(spectral_ms)}, {"laser", rounded(laser_ms)}}}};
  emit_report(report, args.out, tracker);
}

struct BenchArgs {
  NodeId nodes = 0;
  double avg_degree = 10.0;
  std::uint64_t seed = 0;
  double rho = 0.5;
  int snapshots = 1;
  int walk_k = 8;
  std::string engine = "auto";
  std::string out;
  std::string out_dir;
};

void run_bench(const BenchArgs& args, OutputTracker& tracker) {
  laser::GeneratorSpec spec;
  spec.kind = laser::GraphKind::kErdosRenyi;
  spec.nodes = args.nodes;
  spec.avg_degree = args.avg_degree;
  spec.seed = args.seed;
  spec.validate();

  const auto t0 = Clock::now();
  const laser::Graph g = laser::generate(spec);
  const double gen_ms = ms_since(t0);

  laser::RewireConfig config;
  config.snapshots = args.snapshots;
  config.rho_density = args.rho;
  config.walk_k = args.walk_k;
  config.seed = args.seed;

  const auto t1 = Clock::now();
  laser::RewireTimings timings;
  const laser::SnapshotSequence seq = laser::laser_rewire(
      g, config, &timings, engine_from_string(args.engine));
  const double rewire_ms = ms_since(t1);

  std::string records;
  nlohmann::json directed_added = nlohmann::json::array();
  for (const auto& level : seq.levels) {
    directed_added.push_back(level.directed_count());
    for (NodeId source = 0; source < static_cast<NodeId>(level.targets.size());
         ++source) {
      for (NodeId target : level.targets[static_cast<std::size_t>(source)]) {
        records += std::to_string(source) + ' ' + std::to_string(target) +
                   ' ' + std::to_string(level.level) + '\n';
      }
    }
  }

  if (!args.out_dir.empty()) {
    laser::write_snapshot_dir(seq, args.out_dir);
    for (const auto& level : seq.levels) {
      tracker.adopt(fs::path(args.out_dir) /
                    ("snapshot_" + std::to_string(level.level) + ".edges"));
    }
    tracker.adopt(fs::path(args.out_dir) / "manifest.json");
  }

  const nlohmann::json report{
      {"nodes", args.nodes},
      {"avg_degree", rounded(args.avg_degree)},
      {"seed", args.seed},
      {"rho", rounded(args.rho)},
      {"snapshots", args.snapshots},
      {"walk_k", args.walk_k},
      {"engine", args.engine},
      {"n", g.node_count()},
      {"m", g.edge_count()},
      {"directed_added_per_level", directed_added},
      {"edges_digest", laser::fnv1a64_hex(records)},
      {"timings_ms",
       {{"generate", rounded(gen_ms)},
        {"measure", rounded(timings.measure_ms)},
        {"select", rounded(timings.select_ms)},
        {"rewire_total", rounded(rewire_ms)}}}};
  emit_report(report, args.out, tracker);
}

struct SensitivityArgs {
  std::string in;
  NodeId source = 0;
  NodeId target = 0;
  int layers = 1;
  double rho_relu = 1.0;
  std::int32_t shortcut = 1;
  std::string out;
};

void run_sensitivity(const SensitivityArgs& args, OutputTracker& tracker) {
  const laser::Graph g = laser::parse_edge_list(laser::read_text_file(args.in));
  laser::SensitivityConfig cfg;
  cfg.rho_relu = args.rho_relu;
  cfg.source = args.source;
  cfg.target = args.target;
  cfg.layers = args.layers;
  cfg.validate();
  if (args.source >= g.node_count() || args.target >= g.node_count()) {
    throw CLI::ValidationError("sensitivity", "node id out of range");
  }

  const laser::GcnSystem sys = laser::plain_gcn_system(g, false);
  const laser::ModelWeights weights =
      laser::ModelWeights::identity(args.layers, 1, 1);
  const laser::FeatureMatrix x =
      laser::FeatureMatrix::Zero(g.node_count(), 1);
  const Eigen::MatrixXd jac =
      laser::jacobian_fd(sys, x, weights, args.source, args.target);
  const double jacobian_norm =
      jac.jacobiSvd().singularValues()(0);

  const double expected = laser::expected_jacobian_norm(
      g, args.source, args.target, args.layers, args.rho_relu);
  const laser::SensitivityBound bound =
      laser::sensitivity_lower_bound_check(g, args.shortcut, cfg);

  const nlohmann::json report{
      {"source", args.source},
      {"target", args.target},
      {"layers", args.layers},
      {"rho_relu", rounded(args.rho_relu)},
      {"shortcut", args.shortcut},
      {"jacobian_norm", rounded(jacobian_norm)},
      {"expected_norm", rounded(expected)},
      {"prop1",
       {{"lhs", rounded(bound.lhs)},
        {"rhs", rounded(bound.rhs)},
        {"holds", bound.holds}}}};
  emit_report(report, args.out, tracker);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"locality-aware sequential graph rewiring toolkit"};
  app.set_version_flag("--version", std::string(laser::kVersion));
  app.require_subcommand(1);

  OutputTracker tracker;

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "generate a test graph edge list");
  gen->add_option("--kind", gen_args.kind,
                  "path, cycle, clique, lollipop or erdos-renyi")
      ->required();
  gen->add_option("--nodes", gen_args.nodes, "node count");
  gen->add_option("--chain", gen_args.chain, "lollipop chain length");
  gen->add_option("--clique-size", gen_args.clique_size,
                  "lollipop clique size");
  gen->add_option("--edge-prob", gen_args.edge_prob,
                  "edge probability for erdos-renyi");
  gen->add_option("--avg-degree", gen_args.avg_degree,
                  "average degree for erdos-renyi (p = d / n)");
  gen->add_option("--seed", gen_args.seed, "generator seed");
  gen->add_option("--out", gen_args.out, "output edge-list file")->required();
  gen->callback([&] { run_gen(gen_args, tracker); });

  RewireArgs rewire_args;
  auto* rewire =
      app.add_subcommand("rewire", "build a snapshot sequence for a graph");
  rewire->add_option("--in", rewire_args.in, "input edge-list file")
      ->required();
  rewire->add_option("--out", rewire_args.out, "output snapshot directory")
      ->required();
  rewire->add_option("--snapshots", rewire_args.config.snapshots,
                     "number of rewiring levels");
  rewire->add_option("--rho", rewire_args.config.rho_density,
                     "fraction of each orbit to connect");
  rewire->add_option("--walk-k", rewire_args.config.walk_k,
                     "walk length of the connectivity measure");
  rewire->add_option("--seed", rewire_args.config.seed, "selection seed");
  rewire->add_option("--tie-sigma", rewire_args.config.tie_sigma,
                     "tie-break noise scale");
  rewire->add_option("--mode", rewire_args.mode, "mu or random");
  rewire->add_flag(
      "--no-min-one",
      [&](std::int64_t count) { rewire_args.config.min_one = count == 0; },
      "drop the one-edge floor for small orbits");
  rewire->add_option("--engine", rewire_args.engine,
                     "auto, dense or streaming");
  rewire->callback([&] { run_rewire(rewire_args, tracker); });

  MetricsArgs metrics_args;
  auto* metrics = app.add_subcommand(
      "metrics", "report connectivity metrics of a graph or rewiring");
  metrics->add_option("--in", metrics_args.in, "input edge-list file")
      ->required();
  metrics->add_option("--rewired", metrics_args.rewired,
                      "snapshot directory to evaluate");
  metrics->add_option("--out", metrics_args.out,
                      "output JSON file (stdout when omitted)");
  metrics->callback([&] { run_metrics(metrics_args, tracker); });

  AblateArgs ablate_args;
  auto* ablate = app.add_subcommand("ablate", "baseline comparisons");
  ablate->require_subcommand(1);
  auto* lollipop = ablate->add_subcommand(
      "lollipop", "compare rewirings on the chain-plus-clique graph");
  lollipop->add_option("--chain", ablate_args.chain, "chain length");
  lollipop->add_option("--clique-size", ablate_args.clique_size,
                       "clique size");
  lollipop->add_option("--rho", ablate_args.rho, "orbit fraction");
  lollipop->add_option("--seeds", ablate_args.seeds, "number of seeds");
  lollipop->add_option("--seed", ablate_args.seed, "first seed");
  lollipop->add_option("--out", ablate_args.out,
                       "output JSON file (stdout when omitted)");
  lollipop->callback([&] { run_ablate_lollipop(ablate_args, tracker); });

  BenchArgs bench_args;
  auto* bench = app.add_subcommand(
      "bench", "generate and rewire a random graph, reporting timings");
  bench->add_option("--nodes", bench_args.nodes, "node count")->required();
  bench->add_option("--avg-degree", bench_args.avg_degree, "average degree");
  bench->add_option("--seed", bench_args.seed, "seed");
  bench->add_option("--rho", bench_args.rho, "orbit fraction");
  bench->add_option("--snapshots", bench_args.snapshots,
                    "number of rewiring levels");
  bench->add_option("--walk-k", bench_args.walk_k, "walk length");
  bench->add_option("--engine", bench_args.engine, "auto, dense or streaming");
  bench->add_option("--out", bench_args.out,
                    "output JSON file (stdout when omitted)");
  bench->add_option("--out-dir", bench_args.out_dir,
                    "also write the snapshot directory");
  bench->callback([&] { run_bench(bench_args, tracker); });

  SensitivityArgs sens_args;
  auto* sensitivity = app.add_subcommand(
      "sensitivity", "Jacobian sensitivity of a node pair under a shortcut");
  sensitivity->add_option("--in", sens_args.in, "input edge-list file")
      ->required();
  sensitivity->add_option("--source", sens_args.source,
                          "node whose input features are perturbed")
      ->required();
  sensitivity
      ->add_option("--target", sens_args.target,
                   "node whose representation is probed; the shortcut "
                   "attaches here")
      ->required();
  sensitivity->add_option("--layers", sens_args.layers, "layer count")
      ->required();
  sensitivity->add_option("--rho-relu", sens_args.rho_relu,
                          "success probability of the ReLU-derivative model");
  sensitivity
      ->add_option("--shortcut", sens_args.shortcut,
                   "distance from the target to the shortcut endpoint")
      ->required();
  sensitivity->add_option("--out", sens_args.out,
                          "output JSON file (stdout when omitted)");
  sensitivity->callback([&] { run_sensitivity(sens_args, tracker); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    tracker.discard_all();
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
