#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nashsmooth/geometry.hpp"

namespace nashsmooth {

using VertexId = std::size_t;
using ElementId = std::size_t;
using Coords = std::vector<Vec3>;

class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Element {
  std::array<VertexId, 3> v;

  VertexId operator[](std::size_t i) const { return v[i]; }
  friend bool operator==(const Element&, const Element&) = default;
};

/// Triangle mesh with fixed combinatorics.
///
/// Vertex positions stored here are the initial geometry; smoothing works on
/// separate coordinate lists so the mesh itself stays immutable after build.
class Mesh {
 public:
  const Coords& positions() const { return positions_; }
  const std::vector<Element>& elements() const { return elements_; }
  const std::vector<bool>& boundary() const { return boundary_; }
  std::span<const ElementId> elements_of(VertexId v) const { return vertex_to_elements_[v]; }

  std::size_t vertex_count() const { return positions_.size(); }
  std::size_t element_count() const { return elements_.size(); }
  bool is_boundary(VertexId v) const { return boundary_[v]; }

  /// True when every z coordinate is exactly zero; orientation is then
  /// measured against +z.
  bool is_planar() const { return planar_; }

  Triangle triangle(ElementId e, std::span<const Vec3> coords) const {
    const auto& el = elements_[e];
    return {coords[el[0]], coords[el[1]], coords[el[2]]};
  }
  Triangle triangle(ElementId e) const { return triangle(e, positions_); }

  /// Same combinatorics and boundary flags, new geometry.
  Mesh with_positions(Coords coords) const {
    if (coords.size() != positions_.size()) throw MeshError("coordinate count mismatch");
    Mesh m = *this;
    m.positions_ = std::move(coords);
    m.planar_ = std::all_of(m.positions_.begin(), m.positions_.end(),
                            [](Vec3 p) { return p.z == 0.0; });
    return m;
  }

  friend Mesh build_mesh(Coords vertices, std::vector<Element> elements, bool reorient);

 private:
  Coords positions_;
  std::vector<Element> elements_;
  std::vector<bool> boundary_;
  std::vector<std::vector<ElementId>> vertex_to_elements_;
  bool planar_ = true;
};

/// Builds the adjacency and boundary flags. With `reorient`, planar elements
/// with negative signed area get their last two vertices swapped.
inline Mesh build_mesh(Coords vertices, std::vector<Element> elements, bool reorient = true) {
  if (vertices.empty() || elements.empty()) throw MeshError("empty mesh");

  Mesh m;
  m.planar_ = std::all_of(vertices.begin(), vertices.end(), [](Vec3 p) { return p.z == 0.0; });
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!is_finite(vertices[i])) throw MeshError("vertex " + std::to_string(i) + " is not finite");
  }

  m.vertex_to_elements_.resize(vertices.size());
  for (ElementId e = 0; e < elements.size(); ++e) {
    auto& el = elements[e];
    for (VertexId v : el.v) {
      if (v >= vertices.size()) {
        throw MeshError("element " + std::to_string(e) + " references vertex " + std::to_string(v) +
                        " but the mesh has " + std::to_string(vertices.size()) + " vertices");
      }
    }
    if (el[0] == el[1] || el[1] == el[2] || el[0] == el[2]) {
      throw MeshError("element " + std::to_string(e) + " repeats a vertex");
    }
    if (reorient && m.planar_) {
      const Triangle t{vertices[el[0]], vertices[el[1]], vertices[el[2]]};
      if (area_vector(t).z < 0.0) std::swap(el.v[1], el.v[2]);
    }
    for (VertexId v : el.v) m.vertex_to_elements_[v].push_back(e);
  }
  for (VertexId v = 0; v < vertices.size(); ++v) {
    if (m.vertex_to_elements_[v].empty()) {
      throw MeshError("vertex " + std::to_string(v) + " is not referenced by any element");
    }
  }

  std::map<std::pair<VertexId, VertexId>, int> edge_use;
  for (const auto& el : elements) {
    for (int i = 0; i < 3; ++i) {
      VertexId a = el[i];
      VertexId b = el[(i + 1) % 3];
      ++edge_use[std::minmax(a, b)];
    }
  }
  m.boundary_.assign(vertices.size(), false);
  for (const auto& [edge, count] : edge_use) {
    if (count == 1) {
      m.boundary_[edge.first] = true;
      m.boundary_[edge.second] = true;
    }
  }

  m.positions_ = std::move(vertices);
  m.elements_ = std::move(elements);
  return m;
}

}  // namespace nashsmooth
