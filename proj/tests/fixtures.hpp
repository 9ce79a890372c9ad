#pragma once

#include <cmath>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "nashsmooth/nashsmooth.hpp"

namespace fixtures {

using namespace nashsmooth;

inline Triangle equilateral(double side = 1.0, Vec3 origin = {}) {
  return {origin, origin + Vec3{side, 0, 0}, origin + Vec3{0.5 * side, std::sqrt(3.0) / 2 * side, 0}};
}

inline Mesh single(const Triangle& t) { return build_mesh({t[0], t[1], t[2]}, {{{0, 1, 2}}}); }

/// `count` unit equilaterals side by side that share no vertex.
inline Mesh disjoint_equilaterals(int count) {
  Coords v;
  std::vector<Element> e;
  for (int i = 0; i < count; ++i) {
    for (const Vec3& p : equilateral(1.0, {2.0 * i, 0, 0})) v.push_back(p);
    const VertexId b = 3 * static_cast<VertexId>(i);
    e.push_back({{b, b + 1, b + 2}});
  }
  return build_mesh(std::move(v), std::move(e));
}

/// Hexagon-shaped patch of the unit triangular lattice with `rings` rings
/// around the origin; interior vertices get a seeded offset in
/// [-jitter, jitter]^2.
inline Mesh lattice_patch(int rings, double jitter, std::uint64_t seed) {
  std::map<std::pair<int, int>, VertexId> id;
  Coords v;
  for (int j = -rings; j <= rings; ++j) {
    for (int i = -rings; i <= rings; ++i) {
      if (std::abs(-i - j) > rings) continue;
      id[{i, j}] = v.size();
      v.push_back({i + 0.5 * j, j * std::sqrt(3.0) / 2, 0});
    }
  }
  constexpr VertexId none = static_cast<VertexId>(-1);
  auto at = [&](int i, int j) {
    auto it = id.find({i, j});
    return it == id.end() ? none : it->second;
  };
  std::vector<Element> e;
  for (const auto& [ij, a] : id) {
    const auto [i, j] = ij;
    const VertexId b = at(i + 1, j), c = at(i, j + 1), d = at(i - 1, j + 1);
    if (b != none && c != none) e.push_back({{a, b, c}});
    if (c != none && d != none) e.push_back({{a, c, d}});
  }
  const Mesh flat = build_mesh(v, e);
  std::mt19937_64 rng(seed);
  for (VertexId i = 0; i < v.size(); ++i) {
    if (flat.is_boundary(i)) continue;
    v[i].x += jitter * (2.0 * nashsmooth::detail::unit_uniform(rng) - 1.0);
    v[i].y += jitter * (2.0 * nashsmooth::detail::unit_uniform(rng) - 1.0);
  }
  return build_mesh(std::move(v), std::move(e));
}

/// 54-triangle lattice patch in which exactly one interior triangle has
/// edge-ratio quality below 0.6 (about 0.49).
inline Mesh one_bad_triangle() { return lattice_patch(3, 0.2, 2); }

inline Triangle random_triangle(std::mt19937_64& rng, double spread = 2.0) {
  std::uniform_real_distribution<double> u(-spread, spread);
  return {Vec3{u(rng), u(rng), 0}, Vec3{u(rng), u(rng), 0}, Vec3{u(rng), u(rng), 0}};
}

}  // namespace fixtures
