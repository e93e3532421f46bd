// rmds: embed graphs in low-dimensional Euclidean space under node-centrality
// radial constraints, with optional graph-smoothness regularization.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rmds/centrality.hpp"
#include "rmds/csv_export.hpp"
#include "rmds/dissimilarity.hpp"
#include "rmds/errors.hpp"
#include "rmds/graph.hpp"
#include "rmds/manifest.hpp"
#include "rmds/shortest_paths.hpp"
#include "rmds/solver.hpp"
#include "rmds/svg_render.hpp"
#include "rmds/version.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;    // parse / validation problems
constexpr int kExitNumeric = 2;  // numerical failure
constexpr int kExitIo = 3;       // filesystem / stream failure

std::string timestamp_utc() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

rmds::EdgeListFormat parse_format(const std::string& name) {
  if (name == "snap") return rmds::EdgeListFormat::snap_tsv;
  if (name == "csv") return rmds::EdgeListFormat::csv;
  throw rmds::ValidationError("unknown format '" + name +
                              "' (expected snap or csv)");
}

rmds::CentralityKind parse_centrality(const std::string& name) {
  if (name == "betweenness") return rmds::CentralityKind::betweenness;
  if (name == "closeness") return rmds::CentralityKind::closeness;
  if (name == "degree") return rmds::CentralityKind::degree;
  throw rmds::ValidationError(
      "unknown centrality '" + name +
      "' (expected betweenness, closeness, or degree)");
}

void validate_manifest(const rmds::RunManifest& m) {
  if (m.input.empty()) throw rmds::ValidationError("--input is required");
  if (m.lambda < 0.0) throw rmds::ValidationError("lambda must be nonnegative");
  for (double l : m.lambdas) {
    if (l < 0.0) throw rmds::ValidationError("lambda must be nonnegative");
  }
  if (m.epsilon < 0.0) {
    throw rmds::ValidationError("epsilon must be positive (or 0 for default)");
  }
  if (m.p < 1) throw rmds::ValidationError("p must be at least 1");
  if (m.max_iters < 1) {
    throw rmds::ValidationError("max-iters must be at least 1");
  }
  parse_format(m.format);
  parse_centrality(m.centrality);
  if (m.dissimilarity != "ectd" && m.dissimilarity != "shortest-path") {
    throw rmds::ValidationError(
        "unknown dissimilarity '" + m.dissimilarity +
        "' (expected ectd or shortest-path)");
  }
  if (m.ectd_method != "deflation" && m.ectd_method != "eigendecomposition") {
    throw rmds::ValidationError(
        "unknown ectd-method '" + m.ectd_method +
        "' (expected deflation or eigendecomposition)");
  }
}

struct LoadedGraph {
  rmds::Graph graph;
  bool reduced = false;  // true when restricted to the largest component
};

LoadedGraph load_input(const rmds::RunManifest& m, const fs::path& out_dir) {
  rmds::LoadStats stats;
  rmds::Graph g =
      rmds::load_edge_list_file(m.input, parse_format(m.format), &stats);
  if (stats.dropped_self_loops > 0) {
    std::cerr << "note: dropped " << stats.dropped_self_loops
              << " self-loop(s)\n";
  }
  if (stats.duplicate_edges > 0) {
    std::cerr << "note: collapsed " << stats.duplicate_edges
              << " duplicate edge(s), first weight kept\n";
  }
  std::cout << "loaded " << g.node_count() << " nodes, " << g.edges().size()
            << " edges\n";
  LoadedGraph out{std::move(g), false};
  if (m.largest_component) {
    auto comp = rmds::largest_connected_component(out.graph);
    std::cout << "largest connected component: " << comp.graph.node_count()
              << " nodes\n";
    out.graph = std::move(comp.graph);
    out.reduced = true;
  }
  // Input ids may be sparse or textual; the dense-index mapping is persisted
  // with every run.
  rmds::write_component_mapping_csv(out_dir / "mapping.csv", out.graph);
  return out;
}

rmds::CentralityVector compute_centrality(const rmds::Graph& g,
                                          const std::string& kind) {
  switch (parse_centrality(kind)) {
    case rmds::CentralityKind::betweenness:
      return rmds::betweenness(g);
    case rmds::CentralityKind::closeness:
      return rmds::closeness(g);
    case rmds::CentralityKind::degree:
      return rmds::degree_centrality(g);
  }
  throw rmds::ValidationError("unknown centrality kind");
}

rmds::DissimilarityMatrix compute_dissimilarity(const rmds::Graph& g,
                                                rmds::RunManifest& m) {
  if (!m.delta_cache.empty() && fs::exists(m.delta_cache)) {
    auto delta = rmds::read_dissimilarity_cache(m.delta_cache);
    if (delta.rows() != g.node_count()) {
      throw rmds::ValidationError(
          "dissimilarity cache size does not match the graph (" +
          std::to_string(delta.rows()) + " vs " +
          std::to_string(g.node_count()) + " nodes)");
    }
    std::cout << "loaded dissimilarities from " << m.delta_cache << "\n";
    return delta;
  }
  rmds::DissimilarityMatrix delta;
  if (m.dissimilarity == "ectd") {
    rmds::EctdOptions opts;
    opts.max_dense_nodes = m.ectd_max_n;
    opts.method = m.ectd_method == "eigendecomposition"
                      ? rmds::PinvMethod::eigendecomposition
                      : rmds::PinvMethod::deflation;
    delta = rmds::ectd(g, opts);
    m.dissimilarity_definition =
        "ectd: delta_ij = sqrt(volume * (l+_ii + l+_jj - 2 l+_ij))";
  } else {
    delta = rmds::from_shortest_paths(rmds::shortest_paths(g));
    m.dissimilarity_definition = "shortest-path: delta_ij = d_ij";
  }
  if (!m.delta_cache.empty()) {
    rmds::write_dissimilarity_cache(m.delta_cache, delta);
    std::cout << "cached dissimilarities at " << m.delta_cache << "\n";
  }
  return delta;
}

struct EmbedArtifacts {
  rmds::SolveResult result;
  rmds::CentralityVector centrality;
  rmds::RadiusVector radii;
  rmds::Graph graph;
};

EmbedArtifacts run_embed_into(rmds::RunManifest m, const fs::path& out_dir,
                              bool write_timing) {
  fs::create_directories(out_dir);
  LoadedGraph loaded = load_input(m, out_dir);
  const rmds::Graph& g = loaded.graph;

  auto c = compute_centrality(g, m.centrality);
  const double diam = rmds::diameter(g);
  auto radii = rmds::radius_transform(c, diam);
  auto delta = compute_dissimilarity(g, m);

  rmds::SolverConfig cfg;
  cfg.p = m.p;
  cfg.lambda = m.lambda;
  cfg.epsilon = m.epsilon;
  cfg.max_outer_iters = m.max_iters;
  cfg.seed = m.seed;
  auto result = rmds::solve(g, delta, radii, cfg);

  rmds::write_embedding_csv(out_dir / "embedding.csv", result.coords, g, c,
                            radii);
  rmds::write_trace_csv(out_dir / "trace.csv", result.trace, false);
  if (write_timing) {
    rmds::write_trace_csv(out_dir / "trace_timing.csv", result.trace, true);
  }

  if (m.p == 2) {
    rmds::RenderSpec spec;
    spec.draw_edges = !m.no_edges && g.node_count() <= 2000;
    if (!spec.draw_edges && !m.no_edges) {
      std::cerr << "note: graph is large, drawing nodes only\n";
    }
    const std::string svg =
        spec.draw_edges ? rmds::render_svg(result.coords, g, c, spec)
                        : rmds::render_large(result.coords, c, spec);
    rmds::write_text_file(out_dir / "graph.svg", svg);
  } else {
    std::cerr << "note: p != 2, skipping SVG output\n";
  }

  m.out_dir = out_dir.string();
  rmds::save_manifest(out_dir / "manifest.json", m);

  const auto& trace = result.trace;
  const double final_stress =
      trace.iterations.empty() ? 0.0 : trace.iterations.back().stress;
  std::cout << "final stress " << rmds::format_double(final_stress) << " after "
            << trace.iterations.size() << " outer iterations ("
            << trace.termination << ")\n";
  std::cout << "wrote " << out_dir.string() << "\n";
  return {std::move(result), std::move(c), std::move(radii),
          std::move(loaded.graph)};
}

int run_embed(rmds::RunManifest m, bool write_timing) {
  validate_manifest(m);
  const fs::path out_dir =
      m.out_dir.empty() ? fs::path("runs") / (timestamp_utc() + "_embed")
                        : fs::path(m.out_dir);
  m.command = "embed";
  run_embed_into(std::move(m), out_dir, write_timing);
  return kExitOk;
}

int run_centrality(rmds::RunManifest m) {
  validate_manifest(m);
  const fs::path out_dir =
      m.out_dir.empty() ? fs::path("runs") / (timestamp_utc() + "_centrality")
                        : fs::path(m.out_dir);
  fs::create_directories(out_dir);
  m.command = "centrality";
  m.out_dir = out_dir.string();

  LoadedGraph loaded = load_input(m, out_dir);
  auto c = compute_centrality(loaded.graph, m.centrality);
  const double diam = rmds::diameter(loaded.graph);
  auto radii = rmds::radius_transform(c, diam);
  rmds::write_centrality_csv(out_dir / "centrality.csv", c, radii);
  rmds::save_manifest(out_dir / "manifest.json", m);
  std::cout << "wrote " << (out_dir / "centrality.csv").string() << "\n";
  return kExitOk;
}

int run_lambda_sweep(rmds::RunManifest m, bool write_timing) {
  validate_manifest(m);
  if (m.lambdas.empty()) {
    throw rmds::ValidationError("--lambdas requires at least one value");
  }
  const fs::path out_dir =
      m.out_dir.empty() ? fs::path("runs") / (timestamp_utc() + "_sweep")
                        : fs::path(m.out_dir);
  fs::create_directories(out_dir);
  m.command = "lambda-sweep";
  m.out_dir = out_dir.string();
  rmds::save_manifest(out_dir / "manifest.json", m);

  std::string summary = "lambda,iters,final_stress,final_penalty\n";
  for (double lambda : m.lambdas) {
    rmds::RunManifest sub = m;
    sub.command = "embed";
    sub.lambda = lambda;
    sub.lambdas.clear();
    char name[48];
    std::snprintf(name, sizeof(name), "lambda_%g", lambda);
    std::cout << "--- lambda = " << lambda << " ---\n";
    auto artifacts = run_embed_into(sub, out_dir / name, write_timing);

    const auto& trace = artifacts.result.trace;
    const double final_stress =
        trace.iterations.empty() ? 0.0 : trace.iterations.back().stress;
    // Penalty column reports the smoothness h(X) itself, not lambda * h(X).
    const double penalty =
        rmds::smoothness(artifacts.result.coords, artifacts.graph);
    summary += rmds::format_double(lambda);
    summary += ',';
    summary += std::to_string(trace.iterations.size());
    summary += ',';
    summary += rmds::format_double(final_stress);
    summary += ',';
    summary += rmds::format_double(penalty);
    summary += '\n';
  }
  rmds::write_text_file(out_dir / "summary.csv", summary);
  std::cout << "wrote " << (out_dir / "summary.csv").string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rmds: centrality-constrained graph embedding"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  rmds::RunManifest m;
  std::string from_manifest;
  bool trace_timing = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--input", m.input, "edge list file");
    cmd->add_option("--format", m.format, "input format: snap or csv");
    cmd->add_flag("--largest-component", m.largest_component,
                  "restrict to the largest connected component");
    cmd->add_option("--centrality", m.centrality,
                    "betweenness, closeness, or degree");
    cmd->add_option("--out", m.out_dir,
                    "output directory (default: runs/<timestamp>_<cmd>)");
  };
  auto add_solver = [&](CLI::App* cmd) {
    cmd->add_option("--dissimilarity", m.dissimilarity,
                    "ectd or shortest-path");
    cmd->add_option("--p", m.p, "embedding dimension");
    cmd->add_option("--epsilon", m.epsilon,
                    "Frobenius-step stop (0 = 1e-4*sqrt(N*p))");
    cmd->add_option("--max-iters", m.max_iters, "outer iteration cap");
    cmd->add_option("--seed", m.seed, "RNG seed for the initial embedding");
    cmd->add_flag("--no-edges", m.no_edges, "omit edges from the SVG");
    cmd->add_option("--delta-cache", m.delta_cache,
                    "binary dissimilarity cache to reuse or create");
    cmd->add_option("--ectd-max-n", m.ectd_max_n,
                    "dense ECTD node-count guard");
    cmd->add_option("--ectd-method", m.ectd_method,
                    "Laplacian pseudoinverse route: deflation or "
                    "eigendecomposition");
    cmd->add_flag("--trace-timing", trace_timing,
                  "also write trace_timing.csv with wall-clock seconds");
  };

  CLI::App* embed = app.add_subcommand(
      "embed", "embed a graph and write embedding, trace, SVG, manifest");
  add_common(embed);
  add_solver(embed);
  embed->add_option("--lambda", m.lambda, "smoothness weight");
  embed->add_option("--from-manifest", from_manifest,
                    "reproduce a previous run from its manifest.json");

  CLI::App* centrality = app.add_subcommand(
      "centrality", "compute node centralities and radial bounds");
  add_common(centrality);

  CLI::App* sweep = app.add_subcommand(
      "lambda-sweep", "run one embedding per lambda with a shared seed");
  add_common(sweep);
  add_solver(sweep);
  sweep->add_option("--lambdas", m.lambdas, "comma-separated lambda values")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (embed->parsed()) {
      if (!from_manifest.empty()) {
        rmds::RunManifest loaded = rmds::load_manifest(from_manifest);
        // A rerun goes to its own directory unless one was given explicitly.
        loaded.out_dir = embed->count("--out") ? m.out_dir : std::string();
        if (embed->count("--seed")) loaded.seed = m.seed;
        return run_embed(std::move(loaded), trace_timing);
      }
      return run_embed(std::move(m), trace_timing);
    }
    if (centrality->parsed()) return run_centrality(std::move(m));
    if (sweep->parsed()) return run_lambda_sweep(std::move(m), trace_timing);
  } catch (const rmds::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const rmds::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const rmds::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const rmds::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
