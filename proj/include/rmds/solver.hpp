#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rmds/centrality.hpp"
#include "rmds/dissimilarity.hpp"
#include "rmds/errors.hpp"
#include "rmds/graph.hpp"
#include "rmds/random.hpp"

namespace rmds {

/// N x p coordinate matrix; row i is the embedding vector of node i.
using Embedding = Eigen::MatrixXd;

struct SolverConfig {
  int p = 2;                  ///< embedding dimension
  double lambda = 0.0;        ///< smoothness weight, >= 0
  double epsilon = 0.0;       ///< Frobenius-step stop; <= 0 picks the default
  int max_outer_iters = 1000;
  std::uint64_t seed = 0;
};

struct IterationRecord {
  int iter = 0;
  double stress = 0.0;     ///< raw stress cost
  double objective = 0.0;  ///< stress + lambda * smoothness
  double frob_step = 0.0;  ///< ||X^r - X^{r-1}||_F
  double seconds = 0.0;    ///< wall time of this outer iteration
};

struct SolverTrace {
  std::vector<IterationRecord> iterations;
  bool converged = false;
  std::string termination;  ///< "converged" or "max_iterations"
  double epsilon_used = 0.0;
};

struct SolveResult {
  Embedding coords;
  SolverTrace trace;
};

/// Called after each block update with the block index and the current
/// coordinates (blocks <= i already refreshed this sweep).
using BlockObserver = std::function<void(int, const Embedding&)>;

/// Stress cost: half the ordered double sum of squared residuals, i.e. the
/// plain sum over unordered pairs of (||x_i - x_j|| - delta_ij)^2.
inline double stress(const Embedding& X, const DissimilarityMatrix& delta) {
  const Eigen::Index n = X.rows();
  double s = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      const double d = (X.row(i) - X.row(j)).norm();
      const double e = d - delta(j, i);
      s += e * e;
    }
  }
  return s;
}

/// Smoothness h(X) = Tr(X^T L X) = (1/2) sum_ij a_ij ||x_i - x_j||^2,
/// evaluated as a sum over edges.
inline double smoothness(const Embedding& X, const Graph& g) {
  double h = 0.0;
  for (const auto& e : g.edges()) {
    h += e.w * (X.row(e.u) - X.row(e.v)).squaredNorm();
  }
  return h;
}

/// Regularized cost: stress(X) + lambda * h(X).
inline double penalized_objective(const Embedding& X,
                                  const DissimilarityMatrix& delta,
                                  const Graph& g, double lambda) {
  double obj = stress(X, delta);
  if (lambda != 0.0) obj += lambda * smoothness(X, g);
  return obj;
}

/// Subgradient of ||x_i - x_j|| with respect to x_i: the unit direction away
/// from x_j, or zero at coincidence (any vector of norm <= 1 is valid there;
/// zero keeps the update bounded).
inline Eigen::RowVectorXd subgradient_norm_diff(const Eigen::RowVectorXd& xi,
                                                const Eigen::RowVectorXd& xj) {
  Eigen::RowVectorXd diff = xi - xj;
  const double nrm = diff.norm();
  if (nrm == 0.0) return Eigen::RowVectorXd::Zero(xi.size());
  return diff / nrm;
}

/// Closed-form minimizer of the per-block convex surrogate:
///
///   x* = [ sum_{j != i} ( (1 + lambda a_ij) x_j + delta_ij g_j(anchor) ) ]
///        / (N - 1 + lambda d_ii)
///
/// where x_j is the freshest value of block j, g_j(anchor) is the unit
/// direction from x_j toward the previous iterate of block i, and d_ii is the
/// weighted degree. The linearization anchor must be block i's value from the
/// previous sweep for the surrogate to touch the true cost there.
inline Eigen::RowVectorXd block_unconstrained_minimizer(
    const Embedding& X, int i, const Eigen::RowVectorXd& anchor,
    const DissimilarityMatrix& delta, const Graph& g, double lambda) {
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  if (n < 2) {
    throw ValidationError(
        "block update needs at least two nodes; a single-node graph embeds "
        "at the origin");
  }
  Eigen::RowVectorXd num = Eigen::RowVectorXd::Zero(p);
  Eigen::RowVectorXd diff(p);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (j == i) continue;
    num += X.row(j);
    diff = anchor - X.row(j);
    const double nrm = diff.norm();
    if (nrm != 0.0) {
      num += (delta(j, i) / nrm) * diff;  // delta is symmetric
    }
  }
  double den = static_cast<double>(n - 1);
  if (lambda != 0.0) {
    for (const auto& [j, w] : g.neighbors(i)) {
      num += (lambda * w) * X.row(j);
    }
    den += lambda * g.weighted_degree(i);
  }
  return num / den;
}

/// Euclidean projection onto the origin-centered ball of the given radius.
inline Eigen::RowVectorXd project_to_ball(Eigen::RowVectorXd x,
                                          double radius) {
  if (radius < 0.0) throw ValidationError("ball radius must be nonnegative");
  const double nrm = x.norm();
  if (nrm > radius) x *= radius / nrm;
  return x;
}

/// One Gauss-Seidel sweep over all blocks in ascending order. Each block is
/// linearized at its own previous value, minimized in closed form, and
/// projected onto its radial ball, so the penalized objective cannot increase
/// at any single update.
inline void bcd_sweep(Embedding& X, const DissimilarityMatrix& delta,
                      const RadiusVector& radii, const Graph& g, double lambda,
                      const BlockObserver& observer = {}) {
  const int n = static_cast<int>(X.rows());
  Eigen::RowVectorXd anchor(X.cols());
  for (int i = 0; i < n; ++i) {
    anchor = X.row(i);
    Eigen::RowVectorXd best =
        block_unconstrained_minimizer(X, i, anchor, delta, g, lambda);
    X.row(i) = project_to_ball(std::move(best), radii.values(i));
    if (observer) observer(i, X);
  }
}

/// Removes the translation ambiguity: subtracts the column means, leaving
/// pairwise distances unchanged.
inline Embedding center(Embedding X) {
  X.rowwise() -= X.colwise().mean().eval();
  return X;
}

/// Seeded feasible start: each row drawn uniformly from its own radial ball.
inline Embedding initial_embedding(int n, int p, const RadiusVector& radii,
                                   std::uint64_t seed) {
  detail::Rng rng(seed);
  Embedding X(n, p);
  for (int i = 0; i < n; ++i) {
    X.row(i) = rng.ball_point(p, radii.values(i));
  }
  return X;
}

namespace detail {

inline void validate_solver_inputs(const Graph& g,
                                   const DissimilarityMatrix& delta,
                                   const RadiusVector& radii,
                                   const SolverConfig& cfg) {
  const Eigen::Index n = delta.rows();
  if (n == 0) throw ValidationError("empty dissimilarity matrix");
  if (delta.cols() != n) throw ValidationError("dissimilarity matrix not square");
  if (g.node_count() != n) {
    throw ValidationError("graph and dissimilarity sizes disagree");
  }
  if (radii.values.size() != n) {
    throw ValidationError("radius vector size disagrees with dissimilarities");
  }
  if (cfg.p < 1) throw ValidationError("embedding dimension must be >= 1");
  if (cfg.lambda < 0.0) throw ValidationError("lambda must be nonnegative");
  if (cfg.max_outer_iters < 1) {
    throw ValidationError("iteration cap must be positive");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(radii.values(i) >= 0.0) || !std::isfinite(radii.values(i))) {
      throw ValidationError("radii must be finite and nonnegative");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const double d = delta(i, j);
      if (!std::isfinite(d) || d < 0.0) {
        throw ValidationError("dissimilarities must be finite and nonnegative");
      }
      const double gap = std::abs(d - delta(j, i));
      if (gap > 1e-12 * (1.0 + std::abs(d))) {
        throw ValidationError("dissimilarity matrix must be symmetric");
      }
    }
    if (delta(i, i) != 0.0) {
      throw ValidationError("dissimilarity diagonal must be zero");
    }
  }
}

}  // namespace detail

/// Block coordinate descent with successive convex upper-bound
/// approximations. Starting from a seeded feasible embedding, sweeps all
/// blocks until the Frobenius step drops to epsilon (default
/// 1e-4 * sqrt(N * p)) or the iteration cap, then centers the result. The
/// returned trace carries one record per outer iteration; radii are enforced
/// on every iterate before the final centering.
inline SolveResult solve(const Graph& g, const DissimilarityMatrix& delta,
                         const RadiusVector& radii, const SolverConfig& cfg,
                         const BlockObserver& observer = {}) {
  detail::validate_solver_inputs(g, delta, radii, cfg);
  const int n = static_cast<int>(delta.rows());

  SolveResult result;
  result.trace.epsilon_used =
      cfg.epsilon > 0.0 ? cfg.epsilon
                        : 1e-4 * std::sqrt(static_cast<double>(n) * cfg.p);

  if (n == 1) {
    result.coords = Embedding::Zero(1, cfg.p);
    result.trace.converged = true;
    result.trace.termination = "converged";
    return result;
  }

  Embedding X = initial_embedding(n, cfg.p, radii, cfg.seed);
  Embedding previous(n, cfg.p);
  for (int r = 1; r <= cfg.max_outer_iters; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    previous = X;
    bcd_sweep(X, delta, radii, g, cfg.lambda, observer);
    if (!X.allFinite()) {
      throw NumericError("non-finite coordinates at outer iteration " +
                         std::to_string(r));
    }
    const double step = (X - previous).norm();
    const std::chrono::duration<double> dt =
        std::chrono::steady_clock::now() - t0;
    result.trace.iterations.push_back(
        {r, stress(X, delta), penalized_objective(X, delta, g, cfg.lambda),
         step, dt.count()});
    if (step <= result.trace.epsilon_used) {
      result.trace.converged = true;
      break;
    }
  }
  result.trace.termination =
      result.trace.converged ? "converged" : "max_iterations";
  result.coords = center(std::move(X));
  return result;
}

}  // namespace rmds
