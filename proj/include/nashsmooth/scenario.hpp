#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nashsmooth/mesh.hpp"

namespace nashsmooth {

inline constexpr Vec3 kFanCenter{0.3, 0.2, 0.0};
inline constexpr double kPerturbation = 0.15;

namespace detail {

// Uniform double in [0,1) from the top 53 bits, identical on every platform.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Fan of n triangles: a regular n-gon of unit circumradius around an
/// off-center interior vertex. Vertex 0 is the center, vertices 1..n walk the
/// boundary counter-clockwise. With `perturb`, every boundary vertex is
/// shifted by a seeded offset drawn from [-0.15, 0.15]^2.
inline Mesh make_fan(int n, bool perturb, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("fan needs at least 3 triangles");
  Coords v;
  v.push_back(kFanCenter);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * std::numbers::pi * i / n;
    Vec3 p{std::cos(a), std::sin(a), 0.0};
    if (perturb) {
      p.x += kPerturbation * (2.0 * detail::unit_uniform(rng) - 1.0);
      p.y += kPerturbation * (2.0 * detail::unit_uniform(rng) - 1.0);
    }
    v.push_back(p);
  }
  std::vector<Element> e;
  for (int i = 0; i < n; ++i) {
    e.push_back({{0, static_cast<VertexId>(1 + i), static_cast<VertexId>(1 + (i + 1) % n)}});
  }
  return build_mesh(std::move(v), std::move(e));
}

inline const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"fan4",           "fan5",          "fan6",
                                              "fan4_perturbed", "fan5_perturbed", "fan6_perturbed"};
  return names;
}

/// Canonical stand-ins for the small example meshes: fan4, fan5, fan6 and
/// their seeded *_perturbed variants.
inline Mesh generate_scenario(std::string_view name, std::uint64_t seed = 0) {
  constexpr std::string_view suffix = "_perturbed";
  bool perturb = false;
  std::string_view base = name;
  if (base.size() > suffix.size() && base.substr(base.size() - suffix.size()) == suffix) {
    perturb = true;
    base.remove_suffix(suffix.size());
  }
  if (base == "fan4") return make_fan(4, perturb, seed);
  if (base == "fan5") return make_fan(5, perturb, seed);
  if (base == "fan6") return make_fan(6, perturb, seed);
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

}  // namespace nashsmooth
