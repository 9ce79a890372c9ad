#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nashsmooth/mesh.hpp"

namespace nashsmooth {

enum class QualityMetric {
  edge_ratio,  // shortest edge / longest edge
  mean_ratio,
};

inline std::string_view to_string(QualityMetric m) {
  return m == QualityMetric::edge_ratio ? "edge_ratio" : "mean_ratio";
}

inline QualityMetric parse_metric(std::string_view s) {
  if (s == "edge_ratio" || s == "edge-ratio") return QualityMetric::edge_ratio;
  if (s == "mean_ratio" || s == "mean-ratio") return QualityMetric::mean_ratio;
  throw std::invalid_argument("unknown quality metric '" + std::string(s) + "'");
}

/// Shortest over longest pairwise vertex distance. Coincident vertices give 0.
inline double edge_ratio(const Triangle& t) {
  const double a = distance(t[0], t[1]);
  const double b = distance(t[1], t[2]);
  const double c = distance(t[2], t[0]);
  const double longest = std::max({a, b, c});
  if (!(longest > 0.0)) return 0.0;
  return std::min({a, b, c}) / longest;
}

/// 4*sqrt(3)*area / (sum of squared edge lengths). Orientation is taken
/// against +z when `planar`; inverted or degenerate elements give 0.
inline double mean_ratio(const Triangle& t, bool planar) {
  const Vec3 av = area_vector(t);
  const double signed_area = 0.5 * (planar ? av.z : norm(av));
  double sq = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Vec3 d = t[(i + 1) % 3] - t[i];
    sq += dot(d, d);
  }
  if (!(sq > 0.0) || !(signed_area > 0.0)) return 0.0;
  return std::min(1.0, 4.0 * std::numbers::sqrt3 * signed_area / sq);
}

inline double triangle_quality(const Triangle& t, QualityMetric metric, bool planar) {
  return metric == QualityMetric::edge_ratio ? edge_ratio(t) : mean_ratio(t, planar);
}

inline double element_quality(const Mesh& mesh, ElementId e, std::span<const Vec3> coords) {
  return edge_ratio(mesh.triangle(e, coords));
}

inline double mean_ratio_quality(const Mesh& mesh, ElementId e, std::span<const Vec3> coords) {
  return mean_ratio(mesh.triangle(e, coords), mesh.is_planar());
}

inline double quality(const Mesh& mesh, ElementId e, std::span<const Vec3> coords,
                      QualityMetric metric) {
  return triangle_quality(mesh.triangle(e, coords), metric, mesh.is_planar());
}

struct QualitySummary {
  double mean = 0.0;
  double min = 0.0;
};

inline QualitySummary summarize(std::span<const double> values) {
  QualitySummary s{0.0, std::numeric_limits<double>::infinity()};
  for (double v : values) {
    s.mean += v;
    s.min = std::min(s.min, v);
  }
  s.mean /= static_cast<double>(values.size());
  return s;
}

inline QualitySummary mesh_quality(const Mesh& mesh, std::span<const Vec3> coords,
                                   QualityMetric metric = QualityMetric::edge_ratio) {
  std::vector<double> q(mesh.element_count());
  for (ElementId e = 0; e < q.size(); ++e) q[e] = quality(mesh, e, coords, metric);
  return summarize(q);
}

}  // namespace nashsmooth
