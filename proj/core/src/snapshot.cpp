#include "laser/snapshot.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "laser/io.hpp"

namespace laser {

std::string to_string(RewireMode mode) {
  switch (mode) {
    case RewireMode::kMuGuided: return "mu";
    case RewireMode::kUniformRandom: return "random";
  }
  throw std::invalid_argument("unknown rewire mode");
}

RewireMode rewire_mode_from_string(const std::string& s) {
  if (s == "mu") return RewireMode::kMuGuided;
  if (s == "random") return RewireMode::kUniformRandom;
  throw std::invalid_argument("unknown rewire mode '" + s +
                              "' (expected 'mu' or 'random')");
}

void RewireConfig::validate() const {
  if (snapshots < 0) {
    throw std::invalid_argument("snapshot count must be non-negative");
  }
  if (!(rho_density >= 0.0 && rho_density <= 1.0)) {
    throw std::invalid_argument("rho must lie in [0, 1]");
  }
  if (walk_k < 1) {
    throw std::invalid_argument("walk length must be at least 1");
  }
  if (!(tie_sigma > 0.0 && tie_sigma < 0.5)) {
    throw std::invalid_argument(
        "tie-break sigma must be positive and below half the unit score gap");
  }
}

std::int64_t RelationalEdgeSet::directed_count() const {
  std::int64_t total = 0;
  for (const auto& t : targets) total += static_cast<std::int64_t>(t.size());
  return total;
}

std::vector<std::pair<NodeId, NodeId>> RelationalEdgeSet::undirected_edges()
    const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(static_cast<std::size_t>(directed_count()));
  for (NodeId source = 0; source < static_cast<NodeId>(targets.size());
       ++source) {
    for (NodeId target : targets[static_cast<std::size_t>(source)]) {
      out.emplace_back(std::min(source, target), std::max(source, target));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Graph flatten_snapshots(const SnapshotSequence& seq, int up_to) {
  if (up_to < 0 || up_to > seq.level_count()) {
    throw std::invalid_argument("snapshot level out of range");
  }
  auto edges = seq.base.edges();
  for (int i = 0; i < up_to; ++i) {
    const auto added = seq.levels[static_cast<std::size_t>(i)].undirected_edges();
    edges.insert(edges.end(), added.begin(), added.end());
  }
  return Graph::from_edges(seq.base.node_count(), edges);
}

namespace {

nlohmann::json config_json(const RewireConfig& c) {
  return {{"snapshots", c.snapshots}, {"rho_density", c.rho_density},
          {"walk_k", c.walk_k},       {"seed", c.seed},
          {"tie_sigma", c.tie_sigma}, {"min_one", c.min_one},
          {"mode", to_string(c.mode)}};
}

RewireConfig config_from_json(const nlohmann::json& j) {
  RewireConfig c;
  c.snapshots = j.at("snapshots").get<int>();
  c.rho_density = j.at("rho_density").get<double>();
  c.walk_k = j.at("walk_k").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.tie_sigma = j.at("tie_sigma").get<double>();
  c.min_one = j.at("min_one").get<bool>();
  c.mode = rewire_mode_from_string(j.at("mode").get<std::string>());
  return c;
}

std::string level_file_name(int level) {
  return "snapshot_" + std::to_string(level) + ".edges";
}

}  // namespace

void write_snapshot_dir(const SnapshotSequence& seq,
                        const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  nlohmann::json manifest;
  manifest["n"] = seq.base.node_count();
  manifest["m"] = seq.base.edge_count();
  manifest["config"] = config_json(seq.config);
  manifest["levels"] = nlohmann::json::array();
  for (const auto& level : seq.levels) {
    std::string body;
    for (NodeId source = 0; source < static_cast<NodeId>(level.targets.size());
         ++source) {
      for (NodeId target : level.targets[static_cast<std::size_t>(source)]) {
        body += std::to_string(source);
        body += ' ';
        body += std::to_string(target);
        body += ' ';
        body += std::to_string(level.level);
        body += '\n';
      }
    }
    const std::string file = level_file_name(level.level);
    write_text_file(dir / file, body);
    manifest["levels"].push_back(
        {{"level", level.level},
         {"directed_added", level.directed_count()},
         {"undirected_added",
          static_cast<std::int64_t>(level.undirected_edges().size())},
         {"file", file}});
  }
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

SnapshotSequence load_snapshot_dir(const Graph& base,
                                   const std::filesystem::path& dir) {
  const auto manifest =
      nlohmann::json::parse(read_text_file(dir / "manifest.json"));
  if (manifest.at("n").get<NodeId>() != base.node_count()) {
    throw std::runtime_error("snapshot manifest node count " +
                             manifest.at("n").dump() +
                             " does not match the base graph");
  }
  SnapshotSequence seq;
  seq.base = base;
  seq.config = config_from_json(manifest.at("config"));
  for (const auto& entry : manifest.at("levels")) {
    RelationalEdgeSet level;
    level.level = entry.at("level").get<int>();
    level.targets.assign(static_cast<std::size_t>(base.node_count()), {});
    const std::string text =
        read_text_file(dir / entry.at("file").get<std::string>());
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
      const std::size_t eol = std::min(text.find('\n', pos), text.size());
      const std::string_view line(text.data() + pos, eol - pos);
      pos = eol + 1;
      ++line_no;
      if (line.empty()) continue;
      const char* p = line.data();
      const char* end = line.data() + line.size();
      auto next_int = [&](auto& value) {
        while (p != end && (*p == ' ' || *p == '\r')) ++p;
        const auto r = std::from_chars(p, end, value);
        const bool ok = r.ec == std::errc{};
        p = r.ptr;
        return ok;
      };
      NodeId source = 0;
      NodeId target = 0;
      int file_level = 0;
      const bool parsed =
          next_int(source) && next_int(target) && next_int(file_level);
      if (!parsed || file_level != level.level || source < 0 || target < 0 ||
          source >= base.node_count() || target >= base.node_count()) {
        throw std::runtime_error("bad snapshot record at line " +
                                 std::to_string(line_no) + " of " +
                                 entry.at("file").get<std::string>());
      }
      level.targets[static_cast<std::size_t>(source)].push_back(target);
    }
    for (auto& t : level.targets) std::sort(t.begin(), t.end());
    if (level.directed_count() != entry.at("directed_added").get<std::int64_t>()) {
      throw std::runtime_error("snapshot manifest directed count mismatch for level " +
                               std::to_string(level.level));
    }
    seq.levels.push_back(std::move(level));
  }
  return seq;
}

}  // namespace laser
