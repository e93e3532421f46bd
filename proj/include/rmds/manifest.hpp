#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rmds/errors.hpp"
#include "rmds/version.hpp"

namespace rmds {

/// Everything needed to reproduce a run bit-identically on one platform.
/// Serialized as manifest.json next to each run's artifacts.
struct RunManifest {
  std::string command;        // embed | centrality | lambda-sweep
  std::string input;
  std::string format = "snap";
  bool largest_component = false;
  std::string centrality = "betweenness";
  std::string dissimilarity = "ectd";
  int p = 2;
  double lambda = 0.0;
  std::vector<double> lambdas;  // lambda-sweep only
  double epsilon = 0.0;         // 0 = solver default
  int max_iters = 1000;
  std::uint64_t seed = 0;
  bool no_edges = false;
  std::string delta_cache;
  int ectd_max_n = 6000;
  std::string ectd_method = "deflation";  // or "eigendecomposition"
  std::string out_dir;
  std::string tool_version = kVersion;
  /// Dissimilarity convention note; the ECTD volume factor rescales all
  /// entries uniformly, so the definition in force is recorded with the run.
  std::string dissimilarity_definition;
};

inline void to_json(nlohmann::json& j, const RunManifest& m) {
  j = nlohmann::json{{"command", m.command},
                     {"input", m.input},
                     {"format", m.format},
                     {"largest_component", m.largest_component},
                     {"centrality", m.centrality},
                     {"dissimilarity", m.dissimilarity},
                     {"p", m.p},
                     {"lambda", m.lambda},
                     {"lambdas", m.lambdas},
                     {"epsilon", m.epsilon},
                     {"max_iters", m.max_iters},
                     {"seed", m.seed},
                     {"no_edges", m.no_edges},
                     {"delta_cache", m.delta_cache},
                     {"ectd_max_n", m.ectd_max_n},
                     {"ectd_method", m.ectd_method},
                     {"out_dir", m.out_dir},
                     {"tool_version", m.tool_version},
                     {"dissimilarity_definition", m.dissimilarity_definition}};
}

inline void from_json(const nlohmann::json& j, RunManifest& m) {
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  get("command", m.command);
  get("input", m.input);
  get("format", m.format);
  get("largest_component", m.largest_component);
  get("centrality", m.centrality);
  get("dissimilarity", m.dissimilarity);
  get("p", m.p);
  get("lambda", m.lambda);
  get("lambdas", m.lambdas);
  get("epsilon", m.epsilon);
  get("max_iters", m.max_iters);
  get("seed", m.seed);
  get("no_edges", m.no_edges);
  get("delta_cache", m.delta_cache);
  get("ectd_max_n", m.ectd_max_n);
  get("ectd_method", m.ectd_method);
  get("out_dir", m.out_dir);
  get("tool_version", m.tool_version);
  get("dissimilarity_definition", m.dissimilarity_definition);
}

inline void save_manifest(const std::filesystem::path& path,
                          const RunManifest& m) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << nlohmann::json(m).dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

inline RunManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return j.get<RunManifest>();
}

}  // namespace rmds
