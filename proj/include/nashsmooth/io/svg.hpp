#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nashsmooth/io/off.hpp"
#include "nashsmooth/mesh.hpp"

namespace nashsmooth::io {

struct SvgStyle {
  std::string label;
  std::string stroke = "black";
  double width = 0.006;
};

struct SvgLayer {
  Coords coords;
  SvgStyle style;
};

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s == "-0.000000") s.erase(0, 1);
  return s;
}

}  // namespace detail

/// Draws every edge of every layer, one <g> per layer in the given order.
/// The y axis points up. Output depends only on the inputs.
inline std::string render_svg(const Mesh& mesh, std::span<const SvgLayer> layers) {
  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
  double hi_x = -lo_x, hi_y = -lo_x;
  for (const auto& layer : layers) {
    if (layer.coords.size() != mesh.vertex_count()) {
      throw std::invalid_argument("layer '" + layer.style.label + "' has wrong coordinate count");
    }
    for (const Vec3& p : layer.coords) {
      if (p.z != 0.0) throw std::invalid_argument("SVG output needs planar coordinates (z = 0)");
      lo_x = std::min(lo_x, p.x);
      hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y);
      hi_y = std::max(hi_y, p.y);
    }
  }
  if (layers.empty()) lo_x = lo_y = 0.0, hi_x = hi_y = 1.0;
  const double margin = 0.05 * std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  lo_x -= margin;
  lo_y -= margin;
  hi_x += margin;
  hi_y += margin;

  std::set<std::pair<VertexId, VertexId>> edges;
  for (const auto& e : mesh.elements()) {
    for (int i = 0; i < 3; ++i) edges.insert(std::minmax(e[i], e[(i + 1) % 3]));
  }

  using detail::fmt;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(lo_x) << ' ' << fmt(-hi_y)
     << ' ' << fmt(hi_x - lo_x) << ' ' << fmt(hi_y - lo_y) << "\">\n";
  for (const auto& layer : layers) {
    os << "  <g id=\"" << layer.style.label << "\" stroke=\"" << layer.style.stroke
       << "\" stroke-width=\"" << fmt(layer.style.width) << "\" fill=\"none\">\n";
    for (const auto& [a, b] : edges) {
      const Vec3 p = layer.coords[a];
      const Vec3 q = layer.coords[b];
      os << "    <line x1=\"" << fmt(p.x) << "\" y1=\"" << fmt(-p.y) << "\" x2=\"" << fmt(q.x)
         << "\" y2=\"" << fmt(-q.y) << "\"/>\n";
    }
    os << "  </g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

inline void emit_svg(const Mesh& mesh, std::span<const SvgLayer> layers,
                     const std::filesystem::path& path) {
  const std::string doc = render_svg(mesh, layers);
  auto out = detail::open_output(path);
  out << doc;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace nashsmooth::io
