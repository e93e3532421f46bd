#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <queue>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rmds/errors.hpp"

namespace rmds {

struct Edge {
  int u = 0;
  int v = 0;
  double w = 1.0;
};

/// Undirected weighted graph over nodes 0..N-1. Immutable after construction;
/// safe to share across threads.
class Graph {
 public:
  Graph() = default;

  /// Validates the type invariants: endpoints in range, no self-loops, no
  /// duplicate edges, strictly positive weights. Labels default to the
  /// decimal node index.
  Graph(int node_count, std::vector<Edge> edges,
        std::vector<std::string> labels = {})
      : n_(node_count), edges_(std::move(edges)), labels_(std::move(labels)) {
    if (n_ < 0) throw ValidationError("node count must be nonnegative");
    if (!labels_.empty() && static_cast<int>(labels_.size()) != n_) {
      throw ValidationError("label count does not match node count");
    }
    adjacency_.assign(n_, {});
    std::map<std::pair<int, int>, bool> seen;
    for (auto& e : edges_) {
      if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_) {
        throw ValidationError("edge endpoint out of range");
      }
      if (e.u == e.v) throw ValidationError("self-loops are not allowed");
      if (!(e.w > 0.0)) throw ValidationError("edge weights must be positive");
      auto key = std::minmax(e.u, e.v);
      if (!seen.emplace(key, true).second) {
        throw ValidationError("duplicate edge");
      }
      adjacency_[e.u].emplace_back(e.v, e.w);
      adjacency_[e.v].emplace_back(e.u, e.w);
    }
  }

  int node_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Neighbors of i as (node, weight) pairs, in insertion order.
  const std::vector<std::pair<int, double>>& neighbors(int i) const {
    return adjacency_[i];
  }

  /// Weighted degree d_ii.
  double weighted_degree(int i) const {
    double d = 0.0;
    for (const auto& [j, w] : adjacency_[i]) {
      (void)j;
      d += w;
    }
    return d;
  }

  Eigen::VectorXd weighted_degrees() const {
    Eigen::VectorXd d(n_);
    for (int i = 0; i < n_; ++i) d(i) = weighted_degree(i);
    return d;
  }

  /// Graph volume V_G = sum_i d_ii = 2 * total edge weight.
  double volume() const {
    double v = 0.0;
    for (int i = 0; i < n_; ++i) v += weighted_degree(i);
    return v;
  }

  bool has_uniform_weights() const {
    if (edges_.empty()) return true;
    const double w0 = edges_.front().w;
    for (const auto& e : edges_) {
      if (e.w != w0) return false;
    }
    return true;
  }

  std::string label(int i) const {
    return labels_.empty() ? std::to_string(i) : labels_[i];
  }
  bool has_labels() const { return !labels_.empty(); }

  bool connected() const {
    if (n_ <= 1) return true;
    std::vector<char> visited(n_, 0);
    std::queue<int> q;
    q.push(0);
    visited[0] = 1;
    int count = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (const auto& [v, w] : adjacency_[u]) {
        (void)w;
        if (!visited[v]) {
          visited[v] = 1;
          ++count;
          q.push(v);
        }
      }
    }
    return count == n_;
  }

  /// Dense Laplacian L = D - A.
  Eigen::MatrixXd laplacian() const {
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n_, n_);
    for (int i = 0; i < n_; ++i) {
      L(i, i) = weighted_degree(i);
      for (const auto& [j, w] : adjacency_[i]) L(i, j) = -w;
    }
    return L;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, double>>> adjacency_;
  std::vector<std::string> labels_;
};

enum class EdgeListFormat { snap_tsv, csv };

struct LoadStats {
  int dropped_self_loops = 0;
  int duplicate_edges = 0;
  bool skipped_header = false;
};

namespace detail {

inline bool parse_double(const std::string& tok, double* out) {
  if (tok.empty()) return false;
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size()) return false;
  *out = v;
  return true;
}

inline std::vector<std::string> split_fields(const std::string& line,
                                             EdgeListFormat format) {
  std::vector<std::string> fields;
  if (format == EdgeListFormat::csv) {
    std::string cur;
    std::stringstream ss(line);
    while (std::getline(ss, cur, ',')) {
      // trim surrounding spaces
      std::size_t a = cur.find_first_not_of(" \t");
      std::size_t b = cur.find_last_not_of(" \t");
      fields.push_back(a == std::string::npos ? std::string()
                                              : cur.substr(a, b - a + 1));
    }
  } else {
    std::stringstream ss(line);
    std::string tok;
    while (ss >> tok) fields.push_back(tok);
  }
  return fields;
}

}  // namespace detail

/// Parses an edge list stream. Node ids are arbitrary tokens and get
/// re-indexed densely in first-appearance order; the original ids are kept as
/// node labels. Lines starting with '#' are comments. Self-loops are dropped
/// (counted in stats), duplicate edges keep the first weight seen.
inline Graph load_edge_list(std::istream& in, EdgeListFormat format,
                            LoadStats* stats = nullptr) {
  LoadStats local;
  std::unordered_map<std::string, int> index_of;
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  std::map<std::pair<int, int>, bool> seen;

  auto intern = [&](const std::string& id) {
    auto it = index_of.find(id);
    if (it != index_of.end()) return it->second;
    const int idx = static_cast<int>(labels.size());
    index_of.emplace(id, idx);
    labels.push_back(id);
    return idx;
  };

  std::string line;
  int line_no = 0;
  bool saw_data_line = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') continue;
    auto fields = detail::split_fields(line, format);
    if (fields.empty()) continue;

    if (!saw_data_line && format == EdgeListFormat::csv) {
      // Header row: first line whose leading fields are not numeric.
      double tmp;
      const bool numeric =
          fields.size() >= 2 && detail::parse_double(fields[0], &tmp) &&
          detail::parse_double(fields[1], &tmp);
      if (!numeric) {
        local.skipped_header = true;
        saw_data_line = true;
        continue;
      }
    }
    saw_data_line = true;

    if (fields.size() < 2 || fields.size() > 3) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 2 or 3 fields, got " +
                       std::to_string(fields.size()));
    }
    double w = 1.0;
    if (fields.size() == 3) {
      if (!detail::parse_double(fields[2], &w)) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": non-numeric weight '" + fields[2] + "'");
      }
      if (!(w > 0.0)) {
        throw ValidationError("line " + std::to_string(line_no) +
                              ": edge weight must be positive");
      }
    }
    const int u = intern(fields[0]);
    const int v = intern(fields[1]);
    if (u == v) {
      ++local.dropped_self_loops;
      continue;
    }
    auto key = std::minmax(u, v);
    if (seen.count(key)) {
      ++local.duplicate_edges;  // first weight wins
      continue;
    }
    seen.emplace(key, true);
    edges.push_back({u, v, w});
  }
  if (stats) *stats = local;
  const int n = static_cast<int>(labels.size());
  return Graph(n, std::move(edges), std::move(labels));
}

inline Graph load_edge_list_file(const std::filesystem::path& path,
                                 EdgeListFormat format,
                                 LoadStats* stats = nullptr) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return load_edge_list(in, format, stats);
}

struct ComponentResult {
  Graph graph;
  std::vector<int> original_index;  // new index -> index in the input graph
  std::vector<int> old_to_new;      // input index -> new index, -1 if dropped
};

/// Induced subgraph on the largest connected component. Ties are broken in
/// favor of the component containing the smallest original node index. Nodes
/// are re-indexed densely in ascending original order.
inline ComponentResult largest_connected_component(const Graph& g) {
  const int n = g.node_count();
  if (n < 1) throw ValidationError("graph has no nodes");

  std::vector<int> component(n, -1);
  std::vector<int> sizes;
  for (int start = 0; start < n; ++start) {
    if (component[start] != -1) continue;
    const int id = static_cast<int>(sizes.size());
    int size = 0;
    std::queue<int> q;
    q.push(start);
    component[start] = id;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      ++size;
      for (const auto& [v, w] : g.neighbors(u)) {
        (void)w;
        if (component[v] == -1) {
          component[v] = id;
          q.push(v);
        }
      }
    }
    sizes.push_back(size);
  }
  // Components are discovered in ascending order of their minimum node index,
  // so strict comparison keeps the right component on ties.
  int best = 0;
  for (int c = 1; c < static_cast<int>(sizes.size()); ++c) {
    if (sizes[c] > sizes[best]) best = c;
  }

  ComponentResult out;
  out.old_to_new.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (component[i] == best) {
      out.old_to_new[i] = static_cast<int>(out.original_index.size());
      out.original_index.push_back(i);
    }
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (out.old_to_new[e.u] >= 0 && out.old_to_new[e.v] >= 0) {
      edges.push_back({out.old_to_new[e.u], out.old_to_new[e.v], e.w});
    }
  }
  std::vector<std::string> labels;
  labels.reserve(out.original_index.size());
  for (int old : out.original_index) labels.push_back(g.label(old));
  out.graph = Graph(static_cast<int>(out.original_index.size()),
                    std::move(edges), std::move(labels));
  return out;
}

}  // namespace rmds
