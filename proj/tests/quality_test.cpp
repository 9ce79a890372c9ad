#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"

using namespace nashsmooth;

namespace {

Triangle rotate_scale_shift(const Triangle& t, double angle, double scale, Vec3 shift) {
  Triangle out;
  for (int i = 0; i < 3; ++i) {
    const Vec3 p = t[i];
    out[i] = Vec3{scale * (std::cos(angle) * p.x - std::sin(angle) * p.y),
                  scale * (std::sin(angle) * p.x + std::cos(angle) * p.y), 0} +
             shift;
  }
  return out;
}

}  // namespace

TEST(EdgeRatio, ReferenceTriangles) {
  EXPECT_NEAR(edge_ratio(fixtures::equilateral()), 1.0, 1e-15);
  EXPECT_NEAR(edge_ratio({Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}}), 1.0 / std::sqrt(2.0), 1e-15);
  // blind to degeneracy: collinear still scores 1/2
  EXPECT_DOUBLE_EQ(edge_ratio({Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{2, 0, 0}}), 0.5);
  EXPECT_EQ(edge_ratio({Vec3{1, 1, 0}, Vec3{1, 1, 0}, Vec3{1, 1, 0}}), 0.0);
}

TEST(MeanRatio, ReferenceTriangles) {
  EXPECT_NEAR(mean_ratio(fixtures::equilateral(), true), 1.0, 1e-15);
  EXPECT_EQ(mean_ratio({Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{2, 0, 0}}, true), 0.0);
  // Heron: sides 1, 1, sqrt2 -> area 1/2; squared sides sum to 4
  const double a = 1, b = 1, c = std::sqrt(2.0), s = (a + b + c) / 2;
  const double heron = std::sqrt(s * (s - a) * (s - b) * (s - c));
  const double expected = 4 * std::sqrt(3.0) * heron / (a * a + b * b + c * c);
  EXPECT_NEAR(expected, std::sqrt(3.0) / 2, 1e-12);
  EXPECT_NEAR(mean_ratio({Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}}, true), expected, 1e-12);
}

TEST(MeanRatio, InvertedIsZeroInPlaneButNotIn3D) {
  const Triangle cw{Vec3{0, 0, 0}, Vec3{0, 1, 0}, Vec3{1, 0, 0}};
  EXPECT_EQ(mean_ratio(cw, true), 0.0);
  EXPECT_NEAR(mean_ratio(cw, false), std::sqrt(3.0) / 2, 1e-12);
  EXPECT_EQ(mean_ratio({Vec3{}, Vec3{}, Vec3{}}, false), 0.0);
}

TEST(MeshQuality, MeanAndMinimum) {
  const Mesh two = fixtures::disjoint_equilaterals(2);
  auto q = mesh_quality(two, two.positions());
  EXPECT_NEAR(q.mean, 1.0, 1e-15);
  EXPECT_NEAR(q.min, 1.0, 1e-15);

  // one equilateral plus a collinear triple scoring exactly 1/2
  Coords v{{0, 0, 0}, {1, 0, 0}, {0.5, std::sqrt(3.0) / 2, 0}, {3, 0, 0}, {4, 0, 0}, {5, 0, 0}};
  const Mesh m = build_mesh(v, {{{0, 1, 2}}, {{3, 4, 5}}});
  q = mesh_quality(m, m.positions());
  EXPECT_NEAR(q.mean, 0.75, 1e-15);
  EXPECT_DOUBLE_EQ(q.min, 0.5);
}

TEST(MeshQuality, MatchesPerElementRecomputation) {
  const Mesh m = generate_scenario("fan5_perturbed", 7);
  for (auto metric : {QualityMetric::edge_ratio, QualityMetric::mean_ratio}) {
    const auto q = mesh_quality(m, m.positions(), metric);
    double sum = 0, lo = 2;
    for (ElementId e = 0; e < m.element_count(); ++e) {
      const auto& el = m.elements()[e];
      const Vec3 a = m.positions()[el[0]], b = m.positions()[el[1]], c = m.positions()[el[2]];
      double qe;
      if (metric == QualityMetric::edge_ratio) {
        const double l0 = distance(a, b), l1 = distance(b, c), l2 = distance(c, a);
        qe = std::min({l0, l1, l2}) / std::max({l0, l1, l2});
      } else {
        const double twice_area = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
        const double sq = dot(b - a, b - a) + dot(c - b, c - b) + dot(a - c, a - c);
        qe = std::max(0.0, 2 * std::sqrt(3.0) * twice_area / sq);
      }
      sum += qe;
      lo = std::min(lo, qe);
    }
    EXPECT_NEAR(q.mean, sum / m.element_count(), 1e-15);
    EXPECT_NEAR(q.min, lo, 1e-15);
  }
}

TEST(QualityProperties, RangeAndSimilarityInvariance) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi), scale(0.01, 100),
      shift(-50, 50);
  for (int trial = 0; trial < 1000; ++trial) {
    const Triangle t = fixtures::random_triangle(rng);
    const double er = edge_ratio(t), mr = mean_ratio(t, true);
    EXPECT_GE(er, 0.0);
    EXPECT_LE(er, 1.0);
    EXPECT_GE(mr, 0.0);
    EXPECT_LE(mr, 1.0);

    const Triangle moved = rotate_scale_shift(t, angle(rng), scale(rng), {shift(rng), shift(rng), 0});
    EXPECT_NEAR(edge_ratio(moved), er, 1e-12 * std::max(er, 1e-3));
    EXPECT_NEAR(mean_ratio(moved, true), mr, 1e-12 * std::max(mr, 1e-3));
  }
}

TEST(QualityProperties, UnitEdgeRatioIffEquilateral) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Triangle t = fixtures::random_triangle(rng);
    const double a = distance(t[0], t[1]), b = distance(t[1], t[2]), c = distance(t[2], t[0]);
    const bool equal = std::abs(a - b) <= 1e-12 * a && std::abs(b - c) <= 1e-12 * b;
    EXPECT_EQ(std::abs(edge_ratio(t) - 1.0) <= 1e-12, equal);
  }
  std::uniform_real_distribution<double> s(0.1, 10);
  for (int trial = 0; trial < 200; ++trial) {
    const Triangle t = rotate_scale_shift(fixtures::equilateral(), s(rng), s(rng), {s(rng), s(rng), 0});
    EXPECT_NEAR(edge_ratio(t), 1.0, 1e-12);
  }
}

TEST(QualityMetric, ParseAndPrint) {
  EXPECT_EQ(parse_metric("mean_ratio"), QualityMetric::mean_ratio);
  EXPECT_EQ(parse_metric(to_string(QualityMetric::edge_ratio)), QualityMetric::edge_ratio);
  EXPECT_THROW(parse_metric("aspect"), std::invalid_argument);
}
