#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "geokgon/surface.hpp"

using namespace geokgon;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Surface, EdgePointSquareMidpoint) {
  const auto s = PolygonSurface::with_side(4, 2.0);
  const auto p = edge_point(s, {0, 0.5});
  EXPECT_NEAR(p.position.x, 0.0, 1e-15);
  EXPECT_NEAR(p.position.y, -1.0, 1e-15);
  EXPECT_EQ(p.face, Face::Front);
}

TEST(Surface, EdgePointTriangleApothemFoot) {
  const auto s = PolygonSurface::with_inradius(3, 1.0);
  const auto p = edge_point(s, {0, 0.5});
  EXPECT_NEAR(p.position.x, 0.0, 1e-14);
  EXPECT_NEAR(p.position.y, -1.0, 1e-14);
}

TEST(Surface, EdgePointEndpointsAreVertices) {
  for (int n = 3; n <= 12; ++n) {
    const auto s = PolygonSurface::with_side(n, 1.3);
    for (int e = 0; e < n; ++e) {
      const auto a = edge_point(s, {e, 1e-13}).position;
      const auto b = edge_point(s, {(e + 1) % n, 1e-13}).position;
      const auto c = edge_point(s, {e, 1.0 - 1e-13}).position;
      EXPECT_LT(dist(a, s.vertex(e)), 1e-11);
      EXPECT_LT(dist(c, b), 1e-11);
    }
  }
}

TEST(Surface, EdgePointRejectsBadIndex) {
  const auto s = PolygonSurface::with_side(5, 1.0);
  EXPECT_THROW(edge_point(s, {5, 0.5}), std::out_of_range);
  EXPECT_THROW(edge_point(s, {-1, 0.5}), std::out_of_range);
}

TEST(Surface, ConstructionRejectsDegenerate) {
  EXPECT_THROW(PolygonSurface::with_side(2, 1.0), std::invalid_argument);
  EXPECT_THROW(PolygonSurface::with_side(5, 0.0), std::invalid_argument);
  EXPECT_THROW(DiskSurface(-1.0), std::invalid_argument);
}

TEST(Surface, MetricsTriangleInradiusOne) {
  const auto m = metrics(PolygonSurface::with_inradius(3, 1.0));
  // Side 2 sqrt(3): each face has area 3 sqrt(3).
  EXPECT_NEAR(m.doubled_area, 6.0 * std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(m.apothem, 1.0, 1e-14);
  EXPECT_NEAR(m.circumradius, 2.0, 1e-14);
  EXPECT_NEAR(m.interior_angle, kPi / 3.0, 1e-15);
}

TEST(Surface, MetricsSquareSideTwo) {
  const auto m = metrics(PolygonSurface::with_side(4, 2.0));
  EXPECT_NEAR(m.apothem, 1.0, 1e-15);
  EXPECT_NEAR(m.perimeter, 8.0, 1e-15);
  EXPECT_NEAR(m.doubled_area, 8.0, 1e-14);
}

TEST(Surface, HeightOfOddPolygonSideOne) {
  for (int n = 1; n <= 20; ++n) {
    const int p = 2 * n + 1;
    const double x = kPi / p;
    const double h = (1.0 + std::cos(x)) / (2.0 * std::sin(x));
    EXPECT_NEAR(metrics(PolygonSurface::with_side(p, 1.0)).height, h, 1e-12 * h);
  }
}

TEST(Surface, MetricsDisk) {
  const auto m = metrics(DiskSurface(1.5));
  EXPECT_NEAR(m.doubled_area, 2.0 * kPi * 2.25, 1e-13);
  EXPECT_NEAR(m.perimeter, 3.0 * kPi, 1e-13);
}

TEST(Surface, RadiiAndAreaIdentities) {
  for (int n = 3; n <= 40; ++n) {
    const auto s = PolygonSurface::with_side(n, 0.7);
    EXPECT_NEAR(s.circumradius() * std::cos(kPi / n), s.apothem(), 1e-12);
    // Single face area by the shoelace formula.
    double area = 0.0;
    for (int i = 0; i < n; ++i) area += cross(s.vertex(i), s.vertex(i + 1)) / 2.0;
    EXPECT_NEAR(metrics(s).doubled_area, 2.0 * area, 1e-10);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(norm(s.vertex(i)), s.circumradius(), 1e-12);
  }
}

TEST(Surface, VerticesRotateWithIndexShift) {
  const auto s = PolygonSurface::with_side(7, 1.0);
  for (int i = 0; i < 7; ++i) {
    const Vec2 r = rotate(s.vertex(i), 2.0 * kPi / 7);
    EXPECT_LT(dist(r, s.vertex(i + 1)), 1e-13);
  }
}

TEST(Surface, EdgeZeroIsHorizontalBottom) {
  const auto s = PolygonSurface::with_side(9, 1.0);
  EXPECT_NEAR(s.vertex(0).y, s.vertex(1).y, 1e-15);
  EXPECT_LT(s.vertex(0).x, s.vertex(1).x);
  EXPECT_NEAR(s.vertex(0).y, -s.apothem(), 1e-14);
}

TEST(Surface, CanonicalBoundary) {
  const Surface s = PolygonSurface::with_side(4, 2.0);
  const SurfacePoint back_edge{Face::Back, {0.3, -1.0}};
  EXPECT_EQ(canonical_boundary(s, back_edge).face, Face::Front);
  const SurfacePoint interior{Face::Back, {0.1, 0.2}};
  EXPECT_EQ(canonical_boundary(s, interior).face, Face::Back);
  EXPECT_TRUE(equivalent(s, back_edge, {Face::Front, {0.3, -1.0}}));
  EXPECT_FALSE(equivalent(s, interior, {Face::Front, {0.1, 0.2}}));

  const Surface d = DiskSurface(1.0);
  EXPECT_EQ(canonical_boundary(d, {Face::Back, {0.0, 1.0}}).face, Face::Front);
  EXPECT_EQ(canonical_boundary(d, {Face::Back, {0.0, 0.5}}).face, Face::Back);
}

TEST(Surface, LocateBoundary) {
  const auto s = PolygonSurface::with_side(6, 1.0);
  for (int e = 0; e < 6; ++e) {
    const auto loc = s.locate_boundary(edge_point(s, {e, 0.3}).position);
    ASSERT_TRUE(loc.has_value());
    EXPECT_EQ(loc->edge, e);
    EXPECT_NEAR(loc->u, 0.3, 1e-12);
  }
  EXPECT_FALSE(s.locate_boundary({0.0, 0.0}).has_value());
}
