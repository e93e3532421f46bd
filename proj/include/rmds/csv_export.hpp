#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "rmds/centrality.hpp"
#include "rmds/errors.hpp"
#include "rmds/graph.hpp"
#include "rmds/solver.hpp"

namespace rmds {

/// Shortest exact decimal form rarely matters here; %.17g round-trips.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace detail {

inline std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace detail

/// "node,original_id,x1..xp,centrality,radius"
inline void write_embedding_csv(const std::filesystem::path& path,
                                const Embedding& X, const Graph& g,
                                const CentralityVector& c,
                                const RadiusVector& radii) {
  auto out = detail::open_out(path);
  out << "node,original_id";
  for (Eigen::Index k = 0; k < X.cols(); ++k) out << ",x" << (k + 1);
  out << ",centrality,radius\n";
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    out << i << ',' << g.label(static_cast<int>(i));
    for (Eigen::Index k = 0; k < X.cols(); ++k) {
      out << ',' << format_double(X(i, k));
    }
    out << ',' << format_double(c.values(i)) << ','
        << format_double(radii.values(i)) << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

/// "iter,stress,objective,frob_step[,seconds]". Wall time is only written on
/// request: the timing column would break byte-level reproducibility of run
/// artifacts.
inline void write_trace_csv(const std::filesystem::path& path,
                            const SolverTrace& trace,
                            bool include_seconds = false) {
  auto out = detail::open_out(path);
  out << (include_seconds ? "iter,stress,objective,frob_step,seconds"
                          : "iter,stress,objective,frob_step")
      << '\n';
  for (const auto& rec : trace.iterations) {
    out << rec.iter << ',' << format_double(rec.stress) << ','
        << format_double(rec.objective) << ',' << format_double(rec.frob_step);
    if (include_seconds) out << ',' << format_double(rec.seconds);
    out << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

/// "node,centrality,radius"
inline void write_centrality_csv(const std::filesystem::path& path,
                                 const CentralityVector& c,
                                 const RadiusVector& radii) {
  auto out = detail::open_out(path);
  out << "node,centrality,radius\n";
  for (Eigen::Index i = 0; i < c.values.size(); ++i) {
    out << i << ',' << format_double(c.values(i)) << ','
        << format_double(radii.values(i)) << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

/// "new_index,original_id" for a re-indexed component.
inline void write_component_mapping_csv(const std::filesystem::path& path,
                                        const Graph& component) {
  auto out = detail::open_out(path);
  out << "new_index,original_id\n";
  for (int i = 0; i < component.node_count(); ++i) {
    out << i << ',' << component.label(i) << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

inline void write_text_file(const std::filesystem::path& path,
                            const std::string& contents) {
  auto out = detail::open_out(path);
  out << contents;
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace rmds
