#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "nashsmooth/geometry.hpp"

namespace nashsmooth {

struct TransformParams {
  /// Height of each new vertex above the midpoint of its opposite edge,
  /// as a multiple of that edge's length. sqrt(3)/2 fixes equilateral triangles.
  double theta = std::numbers::sqrt3 / 2.0;
  /// Fraction of the way each vertex moves toward its erected apex. Moving
  /// all the way (1) overshoots: the non-equilateral part of the shape is
  /// scaled by -2 and elements invert. 1/2 scales it by -1/2.
  double relaxation = 0.5;
  bool preserve_area = true;
  /// Global orientation for planar meshes (+z). Inverted or collinear
  /// elements are rotated with this normal instead of their own.
  std::optional<Vec3> reference_normal = Vec3{0.0, 0.0, 1.0};

  void validate() const {
    if (!std::isfinite(theta) || !(theta > 0.0)) {
      throw std::invalid_argument("transform theta must be finite and positive");
    }
    if (!(relaxation > 0.0 && relaxation <= 1.0)) {
      throw std::invalid_argument("transform relaxation must lie in (0, 1]");
    }
  }
};

namespace detail {

// Unit vector perpendicular to `d` (d != 0).
inline Vec3 any_perpendicular(Vec3 d) {
  const Vec3 axis = std::abs(d.x) <= std::abs(d.y) && std::abs(d.x) <= std::abs(d.z) ? Vec3{1, 0, 0}
                    : std::abs(d.y) <= std::abs(d.z)                                 ? Vec3{0, 1, 0}
                                                                                     : Vec3{0, 0, 1};
  const Vec3 n = cross(d, axis);
  return n / norm(n);
}

inline Vec3 rotation_normal(const Triangle& t, const TransformParams& params) {
  const Vec3 n = area_vector(t);
  const double len = norm(n);
  if (params.reference_normal) {
    const Vec3 ref = *params.reference_normal / norm(*params.reference_normal);
    if (len > 0.0 && dot(n, ref) > 0.0) return n / len;
    return ref;
  }
  if (len > 0.0) return n / len;
  const double d01 = distance(t[0], t[1]);
  const double d02 = distance(t[0], t[2]);
  return any_perpendicular(d01 >= d02 ? t[1] - t[0] : t[2] - t[0]);
}

}  // namespace detail

/// One application of the regularizing transformation.
///
/// Vertex i moves toward the apex erected over the midpoint of its opposite
/// edge, at height theta times that edge's length, on the side given by the
/// element's orientation. The centroid is preserved; with preserve_area the
/// result is rescaled about the centroid to the input's area.
inline Triangle transform_element(const Triangle& t, const TransformParams& params = {}) {
  if (t[0] == t[1] && t[1] == t[2]) return t;

  const Vec3 n = detail::rotation_normal(t, params);
  Triangle out;
  for (int i = 0; i < 3; ++i) {
    const Vec3& a = t[(i + 1) % 3];
    const Vec3& b = t[(i + 2) % 3];
    const Vec3 apex = 0.5 * (a + b) + params.theta * cross(n, b - a);
    out[i] = params.relaxation == 1.0 ? apex : (1.0 - params.relaxation) * t[i] + params.relaxation * apex;
  }

  if (params.preserve_area) {
    const double before = area(t);
    const double after = area(out);
    if (before > 0.0 && after > 0.0) {
      const Vec3 c = centroid(t);
      const double s = std::sqrt(before / after);
      for (auto& p : out) p = c + s * (p - c);
    }
  }
  return out;
}

inline Triangle transform_power(const Triangle& t, int j, const TransformParams& params = {}) {
  if (j < 0) throw std::invalid_argument("transform power must be non-negative");
  Triangle out = t;
  for (int i = 0; i < j; ++i) out = transform_element(out, params);
  return out;
}

}  // namespace nashsmooth
