#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rmds/centrality.hpp"
#include "rmds/errors.hpp"
#include "rmds/graph.hpp"
#include "rmds/solver.hpp"

namespace rmds {

struct RenderSpec {
  double width = 800.0;
  double height = 800.0;
  bool draw_edges = true;
  double node_radius = 3.0;
  enum class Colormap { heat } colormap = Colormap::heat;
  double margin = 20.0;
  /// Concentric rings at quartile radii of f(c), drawn behind the nodes.
  bool guide_circles = false;
};

namespace detail {

inline void append_fmt(std::string& out, const char* fmt, double a, double b,
                       double c = 0.0, double d = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), fmt, a, b, c, d);
  out += buf;
}

/// Centered fit of the embedding's bounding square into the viewport, aspect
/// preserved. Using the square keeps radial structure isotropic.
struct ViewTransform {
  double cx, cy, scale, px0, py0;

  ViewTransform(const Embedding& X, const RenderSpec& spec) {
    const double min_x = X.col(0).minCoeff();
    const double max_x = X.col(0).maxCoeff();
    const double min_y = X.col(1).minCoeff();
    const double max_y = X.col(1).maxCoeff();
    cx = 0.5 * (min_x + max_x);
    cy = 0.5 * (min_y + max_y);
    double side = std::max(max_x - min_x, max_y - min_y);
    if (side <= 0.0) side = 1.0;
    scale = (std::min(spec.width, spec.height) - 2.0 * spec.margin) / side;
    px0 = spec.width / 2.0;
    py0 = spec.height / 2.0;
  }

  double x(double v) const { return px0 + (v - cx) * scale; }
  // SVG y grows downward; flip to keep the math orientation.
  double y(double v) const { return py0 - (v - cy) * scale; }
};

inline std::string heat_color(double t) {
  // red (lowest centrality) -> yellow (highest)
  const int green =
      static_cast<int>(std::lround(255.0 * std::clamp(t, 0.0, 1.0)));
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#FF%02X00", green);
  return buf;
}

inline std::string render_impl(const Embedding& X, const Graph* g,
                               const CentralityVector& c,
                               const RenderSpec& spec,
                               const RadiusVector* radii) {
  if (X.cols() != 2) {
    throw ValidationError("SVG rendering supports p = 2 embeddings only");
  }
  if (!X.allFinite()) {
    throw NumericError("embedding contains non-finite coordinates");
  }
  if (c.values.size() != X.rows()) {
    throw ValidationError("centrality vector size disagrees with embedding");
  }
  const ViewTransform view(X, spec);

  const double c_lo = c.values.size() ? c.values.minCoeff() : 0.0;
  const double c_hi = c.values.size() ? c.values.maxCoeff() : 0.0;

  std::string out;
  out.reserve(128 + static_cast<std::size_t>(X.rows()) * 64);
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  detail::append_fmt(out,
                     "<svg xmlns=\"http://www.w3.org/2000/svg\" "
                     "width=\"%g\" height=\"%g\">\n",
                     spec.width, spec.height);
  detail::append_fmt(out,
                     "<rect width=\"%g\" height=\"%g\" fill=\"#FFFFFF\"/>\n",
                     spec.width, spec.height);

  if (spec.guide_circles && radii && radii->values.size() > 0) {
    std::vector<double> f(radii->values.data(),
                          radii->values.data() + radii->values.size());
    std::sort(f.begin(), f.end());
    const double ox = view.x(0.0);
    const double oy = view.y(0.0);
    for (double q : {0.25, 0.5, 0.75, 1.0}) {
      const std::size_t k = std::min(
          f.size() - 1, static_cast<std::size_t>(q * (f.size() - 1) + 0.5));
      const double r_px = f[k] * view.scale;
      if (r_px <= 0.0) continue;
      detail::append_fmt(out,
                         "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" "
                         "fill=\"none\" stroke=\"#DDDDDD\"/>\n",
                         ox, oy, r_px);
    }
  }

  if (spec.draw_edges && g) {
    for (const auto& e : g->edges()) {
      detail::append_fmt(out,
                         "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" "
                         "y2=\"%.2f\" stroke=\"#999999\" stroke-width=\"1\"/>\n",
                         view.x(X(e.u, 0)), view.y(X(e.u, 1)),
                         view.x(X(e.v, 0)), view.y(X(e.v, 1)));
    }
  }

  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const double t =
        c_hi > c_lo ? (c.values(i) - c_lo) / (c_hi - c_lo) : 1.0;
    detail::append_fmt(out, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%g\" fill=\"",
                       view.x(X(i, 0)), view.y(X(i, 1)), spec.node_radius);
    out += detail::heat_color(t);
    out += "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace detail

/// Node-link SVG: one circle per node colored by centrality (red lowest to
/// yellow highest), optional edges beneath. Output bytes are a pure function
/// of the inputs.
inline std::string render_svg(const Embedding& X, const Graph& g,
                              const CentralityVector& c,
                              const RenderSpec& spec = {},
                              const RadiusVector* radii = nullptr) {
  return detail::render_impl(X, &g, c, spec, radii);
}

/// Edgeless variant for graphs with thousands of nodes.
inline std::string render_large(const Embedding& X, const CentralityVector& c,
                                RenderSpec spec = {}) {
  spec.draw_edges = false;
  return detail::render_impl(X, nullptr, c, spec, nullptr);
}

}  // namespace rmds
