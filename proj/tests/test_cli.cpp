#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "doctest.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(LASER_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    result.output.append(buffer, got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("laser_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json slurp_json(const fs::path& path) { return json::parse(slurp(path)); }

}  // namespace

TEST_CASE("cli: version and usage") {
  CHECK(run_cli("--version").exit_code == 0);
  CHECK(run_cli("").exit_code != 0);
  CHECK(run_cli("frobnicate").exit_code != 0);
}

TEST_CASE("cli: gen writes an edge list plus manifest") {
  const fs::path dir = fresh_dir("gen");
  const fs::path out = dir / "path.edges";
  const auto run =
      run_cli("gen --kind path --nodes 5 --out " + out.string());
  CHECK(run.exit_code == 0);
  CHECK(slurp(out) == "0 1\n1 2\n2 3\n3 4\n");

  const json manifest = slurp_json(dir / "path.edges.manifest.json");
  CHECK(manifest["n"] == 5);
  CHECK(manifest["m"] == 4);
  CHECK(manifest["config"]["kind"] == "path");
  CHECK(manifest.contains("command"));
  CHECK(manifest.contains("version"));
  CHECK(manifest.contains("outputs"));
  CHECK(manifest.contains("timings_ms"));
  fs::remove_all(dir);
}

TEST_CASE("cli: gen builds lollipops from chain and clique sizes") {
  const fs::path dir = fresh_dir("gen_lollipop");
  const fs::path out = dir / "lollipop.edges";
  const auto run = run_cli("gen --kind lollipop --chain 12 --clique-size 64 --out " +
                           out.string());
  CHECK(run.exit_code == 0);
  const json manifest = slurp_json(dir / "lollipop.edges.manifest.json");
  CHECK(manifest["n"] == 76);
  CHECK(manifest["m"] == 12 + 64 * 63 / 2);
  fs::remove_all(dir);
}

TEST_CASE("cli: gen rejects bad parameters and leaves no files behind") {
  const fs::path dir = fresh_dir("gen_bad");
  const fs::path out = dir / "never.edges";
  CHECK(run_cli("gen --kind moebius --nodes 5 --out " + out.string()).exit_code != 0);
  CHECK(run_cli("gen --kind cycle --nodes 2 --out " + out.string()).exit_code != 0);
  CHECK_FALSE(fs::exists(out));
  CHECK_FALSE(fs::exists(dir / "never.edges.manifest.json"));
  fs::remove_all(dir);
}

TEST_CASE("cli: rewire emits per-level records and a manifest") {
  const fs::path dir = fresh_dir("rewire");
  const fs::path edges = dir / "path.edges";
  REQUIRE(run_cli("gen --kind path --nodes 5 --out " + edges.string()).exit_code == 0);

  const fs::path out = dir / "snapshots";
  const auto run = run_cli("rewire --in " + edges.string() + " --out " +
                           out.string() + " --snapshots 1 --rho 1.0 --seed 0");
  CHECK(run.exit_code == 0);

  std::set<std::pair<int, int>> undirected;
  for (const auto& [u, v] : {std::pair{0, 2}, {1, 3}, {2, 4}}) undirected.insert({u, v});
  std::set<std::pair<int, int>> seen;
  std::ifstream level(out / "snapshot_1.edges");
  int u = 0;
  int v = 0;
  int l = 0;
  while (level >> u >> v >> l) {
    CHECK(l == 1);
    seen.insert({std::min(u, v), std::max(u, v)});
  }
  CHECK(seen == undirected);

  const json manifest = slurp_json(out / "manifest.json");
  CHECK(manifest["n"] == 5);
  CHECK(manifest["m"] == 4);
  CHECK(manifest["config"]["rho_density"] == 1.0);
  CHECK(manifest["levels"][0]["level"] == 1);
  CHECK(manifest["levels"][0]["directed_added"] == 6);
  CHECK(manifest["levels"][0]["file"] == "snapshot_1.edges");
  CHECK(manifest.contains("command"));
  CHECK(manifest.contains("inputs"));
  CHECK(manifest["timings_ms"].contains("total"));
  fs::remove_all(dir);
}

TEST_CASE("cli: rewire outputs are reproducible for a fixed seed") {
  const fs::path dir = fresh_dir("rewire_repro");
  const fs::path edges = dir / "er.edges";
  REQUIRE(run_cli("gen --kind erdos-renyi --nodes 120 --avg-degree 4 --seed 5 --out " +
                  edges.string())
              .exit_code == 0);
  const std::string base = "rewire --in " + edges.string() +
                           " --snapshots 2 --rho 0.3 --mode random --seed 3 --out ";
  REQUIRE(run_cli(base + (dir / "a").string()).exit_code == 0);
  REQUIRE(run_cli(base + (dir / "b").string()).exit_code == 0);
  for (const char* name : {"snapshot_1.edges", "snapshot_2.edges"}) {
    CHECK(slurp(dir / "a" / name) == slurp(dir / "b" / name));
  }
  const json ma = slurp_json(dir / "a" / "manifest.json");
  const json mb = slurp_json(dir / "b" / "manifest.json");
  CHECK(ma["levels"] == mb["levels"]);
  CHECK(ma["config"] == mb["config"]);
  CHECK(ma["inputs"] == mb["inputs"]);
  fs::remove_all(dir);
}

TEST_CASE("cli: rewire with zero density disables every level") {
  const fs::path dir = fresh_dir("rewire_zero");
  const fs::path edges = dir / "path.edges";
  REQUIRE(run_cli("gen --kind path --nodes 6 --out " + edges.string()).exit_code == 0);
  const fs::path out = dir / "snapshots";
  CHECK(run_cli("rewire --in " + edges.string() + " --out " + out.string() +
                " --snapshots 3 --rho 0.0")
            .exit_code == 0);
  const json manifest = slurp_json(out / "manifest.json");
  CHECK(manifest["levels"].empty());
  CHECK(manifest["config"]["rho_density"] == 0.0);
  fs::remove_all(dir);
}

TEST_CASE("cli: rewire validates inputs and cleans up on failure") {
  const fs::path dir = fresh_dir("rewire_bad");
  const fs::path out = dir / "snapshots";
  CHECK(run_cli("rewire --in " + (dir / "missing.edges").string() + " --out " +
                out.string())
            .exit_code != 0);
  CHECK_FALSE(fs::exists(out / "manifest.json"));

  const fs::path edges = dir / "path.edges";
  REQUIRE(run_cli("gen --kind path --nodes 5 --out " + edges.string()).exit_code == 0);
  CHECK(run_cli("rewire --in " + edges.string() + " --out " + out.string() +
                " --rho 1.5")
            .exit_code != 0);
  CHECK_FALSE(fs::exists(out / "manifest.json"));
  fs::remove_all(dir);
}

TEST_CASE("cli: metrics reports closed-form values") {
  const fs::path dir = fresh_dir("metrics");
  const fs::path edges = dir / "k3.edges";
  REQUIRE(run_cli("gen --kind clique --nodes 3 --out " + edges.string()).exit_code == 0);
  const fs::path out = dir / "metrics.json";
  CHECK(run_cli("metrics --in " + edges.string() + " --out " + out.string())
            .exit_code == 0);
  const json report = slurp_json(out);
  CHECK(report["n"] == 3);
  CHECK(report["m"] == 3);
  CHECK(report["total_er"] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(report["spectral_gap"] == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(report["added_edges_per_level"].empty());
  CHECK(report["frobenius_per_level"].empty());
  CHECK(report.contains("timings_ms"));
  fs::remove_all(dir);
}

TEST_CASE("cli: metrics walks the rewiring levels") {
  const fs::path dir = fresh_dir("metrics_levels");
  const fs::path edges = dir / "path.edges";
  REQUIRE(run_cli("gen --kind path --nodes 5 --out " + edges.string()).exit_code == 0);
  const fs::path snapshots = dir / "snapshots";
  REQUIRE(run_cli("rewire --in " + edges.string() + " --out " + snapshots.string() +
                  " --snapshots 1 --rho 1.0")
              .exit_code == 0);
  const auto run = run_cli("metrics --in " + edges.string() + " --rewired " +
                           snapshots.string());
  CHECK(run.exit_code == 0);
  const json report = json::parse(run.output);
  CHECK(report["total_er_per_level"][0] == doctest::Approx(20.0).epsilon(1e-9));
  CHECK(report["total_er_per_level"][1] ==
        doctest::Approx(6.95238095238).epsilon(1e-9));
  CHECK(report["frobenius_per_level"][0] ==
        doctest::Approx(4.24264068712).epsilon(1e-9));
  CHECK(report["added_edges_per_level"][0] == 3);
  fs::remove_all(dir);
}

TEST_CASE("cli: metrics flags disconnected graphs instead of failing") {
  const fs::path dir = fresh_dir("metrics_disconnected");
  const fs::path edges = dir / "split.edges";
  {
    std::ofstream out(edges);
    out << "0 1\n2 3\n";
  }
  const auto run = run_cli("metrics --in " + edges.string());
  CHECK(run.exit_code == 0);
  const json report = json::parse(run.output);
  CHECK(report["total_er"].is_null());
  CHECK(report.contains("warning"));
  fs::remove_all(dir);
}

TEST_CASE("cli: sensitivity reports the shortcut bound") {
  const fs::path dir = fresh_dir("sensitivity");
  const fs::path edges = dir / "p7.edges";
  REQUIRE(run_cli("gen --kind path --nodes 7 --out " + edges.string()).exit_code == 0);
  const auto run = run_cli("sensitivity --in " + edges.string() +
                           " --source 6 --target 0 --layers 6 --shortcut 3");
  CHECK(run.exit_code == 0);
  const json report = json::parse(run.output);
  CHECK(report["source"] == 6);
  CHECK(report["target"] == 0);
  CHECK(report["layers"] == 6);
  CHECK(report["jacobian_norm"] == doctest::Approx(0.03125).epsilon(1e-9));
  CHECK(report["expected_norm"] == doctest::Approx(0.03125).epsilon(1e-9));
  CHECK(report["prop1"]["lhs"] == doctest::Approx(0.176776695297).epsilon(1e-9));
  CHECK(report["prop1"]["rhs"] == doctest::Approx(0.03125).epsilon(1e-9));
  CHECK(report["prop1"]["holds"] == true);

  CHECK(run_cli("sensitivity --in " + edges.string() +
                " --source 6 --target 0 --layers 6 --shortcut 6")
            .exit_code != 0);
  fs::remove_all(dir);
}

TEST_CASE("cli: ablate lollipop compares rewiring strategies") {
  const fs::path dir = fresh_dir("ablate");
  const fs::path out = dir / "ablate.json";
  const auto run = run_cli(
      "ablate lollipop --chain 8 --clique-size 16 --rho 0.125 --seeds 3 --out " +
      out.string());
  CHECK(run.exit_code == 0);
  const json report = slurp_json(out);
  CHECK(report["spectral"].contains("frobenius"));
  CHECK(report["spectral"].contains("added_edges"));
  CHECK(report["laser"].contains("frobenius_mean"));
  CHECK(report["laser"].contains("frobenius_std"));
  CHECK(report["spectral_lower_bound"].is_number());
  CHECK(report["laser_below_spectral"].is_boolean());
  fs::remove_all(dir);
}

TEST_CASE("cli: bench digests are stable across runs") {
  const fs::path dir = fresh_dir("bench");
  const auto a = run_cli("bench --nodes 150 --avg-degree 5 --seed 7 --out " +
                         (dir / "a.json").string());
  const auto b = run_cli("bench --nodes 150 --avg-degree 5 --seed 7 --out " +
                         (dir / "b.json").string());
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  const json ja = slurp_json(dir / "a.json");
  const json jb = slurp_json(dir / "b.json");
  CHECK(ja["edges_digest"] == jb["edges_digest"]);
  CHECK(ja["n"] == 150);
  CHECK(ja["m"] == jb["m"]);
  CHECK(ja["directed_added_per_level"] == jb["directed_added_per_level"]);
  CHECK(ja["timings_ms"].contains("rewire_total"));
  fs::remove_all(dir);
}

TEST_CASE("cli: bench dense and streaming engines share one digest") {
  const fs::path dir = fresh_dir("bench_engines");
  REQUIRE(run_cli("bench --nodes 200 --avg-degree 5 --seed 3 --snapshots 2 "
                  "--engine dense --out " +
                  (dir / "dense.json").string())
              .exit_code == 0);
  REQUIRE(run_cli("bench --nodes 200 --avg-degree 5 --seed 3 --snapshots 2 "
                  "--engine streaming --out " +
                  (dir / "streaming.json").string())
              .exit_code == 0);
  CHECK(slurp_json(dir / "dense.json")["edges_digest"] ==
        slurp_json(dir / "streaming.json")["edges_digest"]);
  fs::remove_all(dir);
}
