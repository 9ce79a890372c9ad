#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <random>

#include "fixtures.hpp"

using namespace nashsmooth;

TEST(BuildMesh, SingleTriangleIsAllBoundary) {
  const Mesh m = build_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{{0, 1, 2}}});
  EXPECT_EQ(m.vertex_count(), 3u);
  EXPECT_EQ(m.element_count(), 1u);
  for (VertexId v = 0; v < 3; ++v) EXPECT_TRUE(m.is_boundary(v));
  ASSERT_EQ(m.elements_of(0).size(), 1u);
  EXPECT_EQ(m.elements_of(0)[0], 0u);
  EXPECT_TRUE(m.is_planar());
}

TEST(BuildMesh, SharedEdgeVerticesHaveTwoElements) {
  const Mesh m = build_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}}, {{{0, 1, 2}}, {{1, 3, 2}}});
  EXPECT_EQ(m.elements_of(1).size(), 2u);
  EXPECT_EQ(m.elements_of(2).size(), 2u);
  EXPECT_EQ(m.elements_of(0).size(), 1u);
  EXPECT_EQ(m.elements_of(3).size(), 1u);
}

TEST(BuildMesh, FanCenterIsInteriorWithFiveElements) {
  const Mesh m = make_fan(5, false, 0);
  // count incidences directly
  std::size_t incident = 0;
  for (const auto& e : m.elements()) incident += std::count(e.v.begin(), e.v.end(), VertexId{0});
  EXPECT_EQ(incident, 5u);
  EXPECT_EQ(m.elements_of(0).size(), 5u);
  EXPECT_FALSE(m.is_boundary(0));
  for (VertexId v = 1; v <= 5; ++v) EXPECT_TRUE(m.is_boundary(v));
}

TEST(BuildMesh, RejectsBadInput) {
  const Coords tri{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  EXPECT_THROW(build_mesh({}, {}), MeshError);
  EXPECT_THROW(build_mesh(tri, {}), MeshError);
  EXPECT_THROW(build_mesh(tri, {{{0, 1, 3}}}), MeshError);
  EXPECT_THROW(build_mesh(tri, {{{0, 1, 1}}}), MeshError);
  EXPECT_THROW(build_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {5, 5, 0}}, {{{0, 1, 2}}}), MeshError);
  EXPECT_THROW(build_mesh({{0, 0, 0}, {1, 0, 0}, {0, std::numeric_limits<double>::quiet_NaN(), 0}},
                          {{{0, 1, 2}}}),
               MeshError);
}

TEST(BuildMesh, ReorientsClockwiseElements) {
  const Mesh m = build_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{{0, 2, 1}}});
  EXPECT_EQ(m.elements()[0], (Element{{0, 1, 2}}));
  EXPECT_GT(area_vector(m.triangle(0)).z, 0.0);

  const Mesh kept = build_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{{0, 2, 1}}}, false);
  EXPECT_EQ(kept.elements()[0], (Element{{0, 2, 1}}));
}

TEST(BuildMesh, NonPlanarMeshKeepsOrder) {
  const Mesh m = build_mesh({{0, 0, 0}, {1, 0, 1}, {0, 1, 0}}, {{{0, 2, 1}}});
  EXPECT_FALSE(m.is_planar());
  EXPECT_EQ(m.elements()[0], (Element{{0, 2, 1}}));
}

TEST(BuildMesh, AdjacencyRoundTripOnRandomPatches) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Mesh m = fixtures::lattice_patch(1 + seed % 3, 0.2, seed);
    for (VertexId v = 0; v < m.vertex_count(); ++v) {
      for (ElementId e = 0; e < m.element_count(); ++e) {
        const auto& el = m.elements()[e].v;
        const bool in_element = std::find(el.begin(), el.end(), v) != el.end();
        const auto around = m.elements_of(v);
        const bool in_list = std::find(around.begin(), around.end(), e) != around.end();
        EXPECT_EQ(in_element, in_list) << "seed " << seed << " v " << v << " e " << e;
      }
    }
  }
}

TEST(BuildMesh, LatticeBoundaryIsTheOuterRing) {
  const Mesh m = fixtures::lattice_patch(2, 0.0, 0);
  EXPECT_EQ(m.vertex_count(), 19u);
  EXPECT_EQ(m.element_count(), 24u);
  EXPECT_EQ(std::count(m.boundary().begin(), m.boundary().end(), true), 12);
}

TEST(Mesh, WithPositionsReplacesGeometryOnly) {
  const Mesh m = make_fan(4, false, 0);
  Coords moved = m.positions();
  moved[0] = {0, 0, 0};
  const Mesh n = m.with_positions(moved);
  EXPECT_EQ(n.positions()[0], (Vec3{0, 0, 0}));
  EXPECT_EQ(n.elements(), m.elements());
  EXPECT_EQ(n.boundary(), m.boundary());
  EXPECT_THROW(m.with_positions(Coords(2)), MeshError);
}
