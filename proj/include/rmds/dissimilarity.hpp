#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "rmds/errors.hpp"
#include "rmds/graph.hpp"
#include "rmds/shortest_paths.hpp"

namespace rmds {

/// Symmetric target distances with zero diagonal and finite entries.
using DissimilarityMatrix = Eigen::MatrixXd;

/// Adopts geodesic distances verbatim. Throws if any pair is disconnected.
inline DissimilarityMatrix from_shortest_paths(const DistanceMatrix& d) {
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    for (Eigen::Index j = 0; j < d.cols(); ++j) {
      if (!std::isfinite(d(i, j))) {
        throw ValidationError(
            "distance matrix has an infinite entry; extract the largest "
            "connected component first");
      }
    }
  }
  return d;
}

enum class PinvMethod { deflation, eigendecomposition };

struct EctdOptions {
  /// Dense pseudoinverse guard; raise it deliberately for larger graphs.
  int max_dense_nodes = 6000;
  PinvMethod method = PinvMethod::deflation;
};

namespace detail {

/// Moore-Penrose pseudoinverse of a connected graph's Laplacian via rank-one
/// deflation: (L + 11^T/N)^{-1} - 11^T/N. The shifted matrix is positive
/// definite, so a Cholesky solve is enough.
inline Eigen::MatrixXd laplacian_pinv_deflation(const Eigen::MatrixXd& L) {
  const Eigen::Index n = L.rows();
  Eigen::MatrixXd shifted = L;
  shifted.array() += 1.0 / static_cast<double>(n);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(shifted);
  if (ldlt.info() != Eigen::Success) {
    throw NumericError("Laplacian pseudoinverse: factorization failed");
  }
  Eigen::MatrixXd pinv =
      ldlt.solve(Eigen::MatrixXd::Identity(n, n));
  pinv.array() -= 1.0 / static_cast<double>(n);
  return pinv;
}

inline Eigen::MatrixXd laplacian_pinv_eigen(const Eigen::MatrixXd& L) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
  if (es.info() != Eigen::Success) {
    throw NumericError(
        "Laplacian pseudoinverse: eigendecomposition did not converge");
  }
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  const double cutoff = 1e-10 * std::max(1.0, vals.cwiseAbs().maxCoeff());
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(vals.size());
  for (Eigen::Index k = 0; k < vals.size(); ++k) {
    if (vals(k) > cutoff) inv(k) = 1.0 / vals(k);
  }
  return vecs * inv.asDiagonal() * vecs.transpose();
}

}  // namespace detail

/// Euclidean commute-time distances:
///   delta_ij = sqrt(V_G * (l+_ii + l+_jj - 2 l+_ij)),
/// with L+ the Laplacian pseudoinverse and V_G the graph volume. Equivalently
/// delta_ij^2 = V_G * r_eff(i, j) with r_eff the effective resistance.
inline DissimilarityMatrix ectd(const Graph& g, const EctdOptions& opts = {}) {
  const int n = g.node_count();
  if (n < 1) throw ValidationError("graph has no nodes");
  if (!g.connected()) {
    throw ValidationError(
        "ECTD requires a connected graph; extract the largest connected "
        "component first");
  }
  if (n > opts.max_dense_nodes) {
    throw ValidationError(
        "graph has " + std::to_string(n) +
        " nodes, above the dense ECTD guard of " +
        std::to_string(opts.max_dense_nodes) +
        "; raise the guard or use shortest-path dissimilarities");
  }
  const Eigen::MatrixXd L = g.laplacian();
  const Eigen::MatrixXd pinv = opts.method == PinvMethod::deflation
                                   ? detail::laplacian_pinv_deflation(L)
                                   : detail::laplacian_pinv_eigen(L);
  const double volume = g.volume();
  DissimilarityMatrix delta(n, n);
  for (int i = 0; i < n; ++i) {
    delta(i, i) = 0.0;
    for (int j = 0; j < i; ++j) {
      const double r = pinv(i, i) + pinv(j, j) - 2.0 * pinv(i, j);
      const double v = volume * std::max(0.0, r);  // clamp rounding noise
      delta(i, j) = delta(j, i) = std::sqrt(v);
    }
  }
  return delta;
}

// --- binary cache ------------------------------------------------------
// 16-byte header (8-byte magic + uint64 N, little-endian), then N*N float64
// entries row-major. Lets expensive ECTD runs be reused across invocations.

inline constexpr char kDissimilarityCacheMagic[8] = {'R', 'M', 'D', 'S',
                                                     'D', 'E', 'L', 'T'};

namespace detail {

inline void require_little_endian() {
  const std::uint16_t probe = 1;
  char first;
  std::memcpy(&first, &probe, 1);
  if (first != 1) {
    throw IoError("dissimilarity cache files require a little-endian host");
  }
}

}  // namespace detail

inline void write_dissimilarity_cache(const std::filesystem::path& path,
                                      const DissimilarityMatrix& delta) {
  detail::require_little_endian();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(kDissimilarityCacheMagic, 8);
  const std::uint64_t n = static_cast<std::uint64_t>(delta.rows());
  out.write(reinterpret_cast<const char*>(&n), 8);
  std::vector<double> row(delta.cols());
  for (Eigen::Index i = 0; i < delta.rows(); ++i) {
    for (Eigen::Index j = 0; j < delta.cols(); ++j) row[j] = delta(i, j);
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(double)));
  }
  if (!out) throw IoError("failed writing " + path.string());
}

inline DissimilarityMatrix read_dissimilarity_cache(
    const std::filesystem::path& path) {
  detail::require_little_endian();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kDissimilarityCacheMagic, 8) != 0) {
    throw ParseError(path.string() + " is not a dissimilarity cache file");
  }
  std::uint64_t n = 0;
  in.read(reinterpret_cast<char*>(&n), 8);
  if (!in) throw ParseError(path.string() + ": truncated header");
  DissimilarityMatrix delta(n, n);
  std::vector<double> row(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(n * sizeof(double)));
    if (!in) throw ParseError(path.string() + ": truncated payload");
    for (std::uint64_t j = 0; j < n; ++j) delta(i, j) = row[j];
  }
  return delta;
}

}  // namespace rmds
