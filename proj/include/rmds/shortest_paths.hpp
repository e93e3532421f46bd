#pragma once

#include <limits>
#include <queue>
#include <vector>

#include <Eigen/Dense>

#include "rmds/errors.hpp"
#include "rmds/graph.hpp"
#include "rmds/parallel.hpp"

namespace rmds {

/// All-pairs geodesic distances; +inf marks disconnected pairs.
using DistanceMatrix = Eigen::MatrixXd;

inline constexpr double kInfiniteDistance =
    std::numeric_limits<double>::infinity();

namespace detail {

/// Single-source geodesics into out[0..n). BFS when every weight equals
/// `uniform_w` (> 0), Dijkstra otherwise (uniform_w <= 0).
inline void single_source_distances(const Graph& g, int source,
                                    double uniform_w, double* out) {
  const int n = g.node_count();
  for (int i = 0; i < n; ++i) out[i] = kInfiniteDistance;
  if (uniform_w > 0.0) {
    std::vector<int> hops(n, -1);
    std::queue<int> q;
    hops[source] = 0;
    q.push(source);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (const auto& [v, w] : g.neighbors(u)) {
        (void)w;
        if (hops[v] == -1) {
          hops[v] = hops[u] + 1;
          q.push(v);
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      if (hops[i] >= 0) out[i] = hops[i] * uniform_w;
    }
  } else {
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    out[source] = 0.0;
    pq.push({0.0, source});
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d > out[u]) continue;
      for (const auto& [v, w] : g.neighbors(u)) {
        const double nd = d + w;
        if (nd < out[v]) {
          out[v] = nd;
          pq.push({nd, v});
        }
      }
    }
  }
}

inline double uniform_weight_or_zero(const Graph& g) {
  if (g.edges().empty()) return 1.0;
  return g.has_uniform_weights() ? g.edges().front().w : 0.0;
}

}  // namespace detail

/// All-pairs geodesics. Sources run in parallel; each writes its own row, so
/// the result does not depend on scheduling.
inline DistanceMatrix shortest_paths(const Graph& g) {
  const int n = g.node_count();
  DistanceMatrix d(n, n);
  const double uw = detail::uniform_weight_or_zero(g);
  detail::parallel_for(n, [&](int s) {
    std::vector<double> row(n);
    detail::single_source_distances(g, s, uw, row.data());
    for (int j = 0; j < n; ++j) d(s, j) = row[j];
  });
  // Opposite-direction path sums can round differently; pin exact symmetry
  // by keeping the smaller of the two.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      const double m = std::min(d(i, j), d(j, i));
      d(i, j) = d(j, i) = m;
    }
  }
  return d;
}

/// Max finite geodesic distance, streamed per source (no N x N storage).
/// Throws on disconnected graphs.
inline double diameter(const Graph& g) {
  const int n = g.node_count();
  if (n == 0) throw ValidationError("graph has no nodes");
  const double uw = detail::uniform_weight_or_zero(g);
  std::vector<double> per_source(n, 0.0);
  std::vector<char> source_ok(n, 1);
  detail::parallel_for(n, [&](int s) {
    std::vector<double> row(n);
    detail::single_source_distances(g, s, uw, row.data());
    double mx = 0.0;
    for (int j = 0; j < n; ++j) {
      if (row[j] == kInfiniteDistance) {
        source_ok[s] = 0;
        return;
      }
      mx = std::max(mx, row[j]);
    }
    per_source[s] = mx;
  });
  double best = 0.0;
  for (int s = 0; s < n; ++s) {
    if (!source_ok[s]) {
      throw ValidationError(
          "graph is disconnected; extract the largest connected component "
          "first");
    }
    best = std::max(best, per_source[s]);
  }
  return best;
}

/// Diameter from a precomputed distance matrix.
inline double diameter(const DistanceMatrix& d) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    for (Eigen::Index j = 0; j < d.cols(); ++j) {
      if (d(i, j) == kInfiniteDistance) {
        throw ValidationError(
            "graph is disconnected; extract the largest connected component "
            "first");
      }
      best = std::max(best, d(i, j));
    }
  }
  return best;
}

}  // namespace rmds
