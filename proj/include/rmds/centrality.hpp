#pragma once

#include <algorithm>
#include <queue>
#include <vector>

#include <Eigen/Dense>

#include "rmds/errors.hpp"
#include "rmds/graph.hpp"
#include "rmds/parallel.hpp"
#include "rmds/shortest_paths.hpp"

namespace rmds {

enum class CentralityKind { betweenness, closeness, degree };

inline const char* to_string(CentralityKind kind) {
  switch (kind) {
    case CentralityKind::betweenness:
      return "betweenness";
    case CentralityKind::closeness:
      return "closeness";
    case CentralityKind::degree:
      return "degree";
  }
  return "?";
}

struct CentralityVector {
  Eigen::VectorXd values;
  CentralityKind kind = CentralityKind::degree;
};

/// Per-node radial bound f(c_i), monotone decreasing in centrality.
struct RadiusVector {
  Eigen::VectorXd values;
};

namespace detail {

// One Brandes source: dependency accumulation into acc. Pair dependencies are
// counted once per ordered (s, t); callers halve the total afterwards. The
// endpoint convention matches sigma_{jk}(i) with i distinct from both ends.
inline void brandes_source(const Graph& g, int s, bool unweighted,
                           std::vector<double>& acc) {
  const int n = g.node_count();
  std::vector<double> sigma(n, 0.0);
  std::vector<double> dist(n, kInfiniteDistance);
  std::vector<std::vector<int>> preds(n);
  std::vector<int> order;
  order.reserve(n);
  sigma[s] = 1.0;
  dist[s] = 0.0;

  if (unweighted) {
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      order.push_back(u);
      for (const auto& [v, w] : g.neighbors(u)) {
        (void)w;
        if (dist[v] == kInfiniteDistance) {
          dist[v] = dist[u] + 1.0;
          q.push(v);
        }
        if (dist[v] == dist[u] + 1.0) {
          sigma[v] += sigma[u];
          preds[v].push_back(u);
        }
      }
    }
  } else {
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    std::vector<char> settled(n, 0);
    pq.push({0.0, s});
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (settled[u]) continue;
      settled[u] = 1;
      order.push_back(u);
      for (const auto& [v, w] : g.neighbors(u)) {
        const double nd = d + w;
        if (nd < dist[v]) {
          dist[v] = nd;
          sigma[v] = sigma[u];
          preds[v].assign(1, u);
          pq.push({nd, v});
        } else if (nd == dist[v]) {
          sigma[v] += sigma[u];
          preds[v].push_back(u);
        }
      }
    }
  }

  std::vector<double> delta(n, 0.0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int w = *it;
    for (int v : preds[w]) {
      delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
    }
    if (w != s) acc[w] += delta[w];
  }
}

}  // namespace detail

/// Betweenness centrality by dependency accumulation over all sources:
/// c_i = sum over unordered pairs {j, k} (endpoints excluded) of the fraction
/// of j-k geodesics through i. Requires a connected graph.
inline CentralityVector betweenness(const Graph& g) {
  const int n = g.node_count();
  if (!g.connected()) {
    throw ValidationError(
        "betweenness centrality requires a connected graph; extract the "
        "largest connected component first");
  }
  // A uniform weight rescales all geodesics equally, so BFS applies.
  const bool bfs_ok = g.has_uniform_weights();

  constexpr int kBlock = 64;
  const int n_blocks = n == 0 ? 0 : (n + kBlock - 1) / kBlock;
  std::vector<std::vector<double>> partial(n_blocks);
  detail::parallel_blocks(n, kBlock, [&](int b, int begin, int end) {
    partial[b].assign(n, 0.0);
    for (int s = begin; s < end; ++s) {
      detail::brandes_source(g, s, bfs_ok, partial[b]);
    }
  });

  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  for (int b = 0; b < n_blocks; ++b) {  // fixed order: deterministic sums
    for (int i = 0; i < n; ++i) c(i) += partial[b][i];
  }
  c *= 0.5;  // ordered pairs -> unordered pairs
  return {c, CentralityKind::betweenness};
}

/// Closeness centrality c_i = 1 / sum_j d_ij. Requires a connected graph.
inline CentralityVector closeness(const Graph& g) {
  const int n = g.node_count();
  if (n < 2) {
    throw ValidationError("closeness centrality needs at least two nodes");
  }
  if (!g.connected()) {
    throw ValidationError(
        "closeness centrality requires a connected graph (the distance sum "
        "diverges); extract the largest connected component first");
  }
  const double uw = detail::uniform_weight_or_zero(g);
  Eigen::VectorXd c(n);
  detail::parallel_for(n, [&](int i) {
    std::vector<double> row(n);
    detail::single_source_distances(g, i, uw, row.data());
    double sum = 0.0;
    for (int j = 0; j < n; ++j) sum += row[j];
    c(i) = 1.0 / sum;
  });
  return {c, CentralityKind::closeness};
}

/// Weighted degree centrality c_i = d_ii.
inline CentralityVector degree_centrality(const Graph& g) {
  return {g.weighted_degrees(), CentralityKind::degree};
}

/// Affine map from centralities to radial bounds:
///   f_i = (diam / 2) * (1 - (c_i - min c) / (max c - min c)),
/// so the most central node sits at radius 0 and the least central at
/// diam / 2.
inline RadiusVector radius_transform(const CentralityVector& c, double diam) {
  const auto& v = c.values;
  if (v.size() == 0) throw ValidationError("empty centrality vector");
  if (!(diam > 0.0)) throw ValidationError("diameter must be positive");
  const double lo = v.minCoeff();
  const double hi = v.maxCoeff();
  if (!(hi > lo)) {
    throw ValidationError(
        "constant centrality vector: the radius transform is undefined; pass "
        "an explicit uniform radius instead");
  }
  RadiusVector r;
  r.values = (diam / 2.0) * (1.0 - ((v.array() - lo) / (hi - lo))).matrix();
  return r;
}

inline RadiusVector uniform_radii(int n, double radius) {
  if (n < 1) throw ValidationError("need at least one node");
  if (!(radius >= 0.0)) throw ValidationError("radius must be nonnegative");
  return {Eigen::VectorXd::Constant(n, radius)};
}

}  // namespace rmds
