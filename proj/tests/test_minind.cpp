#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "geokgon/minind.hpp"

using namespace geokgon;

namespace {

constexpr double kPi = std::numbers::pi;

void expect_report_consistent(const MinindReport& r) {
  ASSERT_TRUE(r.minind.has_value());
  const int k = *r.minind;
  EXPECT_GE(k, r.period);
  EXPECT_LE(r.length / k, r.s_max + r.tolerance);
  if (k > 2) {
    EXPECT_GT(r.length / (k - 1), r.s_max - r.tolerance);
  }
  EXPECT_TRUE(r.verified);
}

}  // namespace

TEST(MinimizingArc, SingleChordMinimizes) {
  const auto p = trace(PolygonSurface::with_side(6, 1.0), {0, 0.4}, 1.2, 4);
  const double seg = p.segment(1).length();
  EXPECT_TRUE(is_minimizing_arc(p, p.arc_at_hit(1) + 0.1 * seg, 0.8 * seg, 1e-9));
}

TEST(MinimizingArc, DiskSquareSideIsTight) {
  const auto p = make_disk_geodesic(DiskSurface(1.0), 4, 1, 1);
  EXPECT_TRUE(is_minimizing_arc(p, 0.3, std::sqrt(2.0), default_tolerance(p)));
}

TEST(MinimizingArc, OverUnderArcPastHitFails) {
  const auto p = make_special(PolygonSurface::with_inradius(3, 1.0), {SpecialKind::OverUnder, 0});
  const double L = p.length();
  const double tol = default_tolerance(p);
  EXPECT_FALSE(is_minimizing_arc(p, p.arc_at_hit(1), L / 6.0 + L / 100.0, tol));
  EXPECT_TRUE(is_minimizing_arc(p, p.arc_at_hit(1), L / 6.0, tol));
}

TEST(MinimizingArc, MonotoneInLength) {
  const auto p = make_special(PolygonSurface::with_side(5, 1.0), {SpecialKind::VShape, 0});
  const double L = p.length();
  const double tol = default_tolerance(p);
  for (double t : {0.0, 0.13 * L, 0.4 * L, 0.77 * L}) {
    bool failed = false;
    for (int i = 1; i <= 40; ++i) {
      const bool ok = is_minimizing_arc(p, t, i * L / 80.0, tol);
      if (failed) {
        EXPECT_FALSE(ok);
      }
      failed = failed || !ok;
    }
    EXPECT_TRUE(failed);
  }
}

TEST(MinimizingArc, RejectsLongArcs) {
  const auto p = make_disk_geodesic(DiskSurface(1.0), 4, 1, 1);
  EXPECT_THROW(is_minimizing_arc(p, 0.0, p.length() * 0.6, 1e-9), std::invalid_argument);
  EXPECT_THROW(is_minimizing_arc(p, 0.0, 0.0, 1e-9), std::invalid_argument);
}

TEST(MaxUniformArc, DiskPolygonSide) {
  for (int m : {4, 6, 8}) {
    const auto p = make_disk_geodesic(DiskSurface(1.0), m, 1, 1);
    const double theta = kPi / 2.0 - kPi / m;
    // Overshooting a corner by e shortens the chord shortcut by about e (1 - cos(2 pi / m)).
    const double slack = 2.0 * default_tolerance(p) / (1.0 - std::cos(2.0 * kPi / m));
    EXPECT_NEAR(max_uniform_arc(p, default_tolerance(p)).s_max, 2.0 * std::cos(theta), slack);
    EXPECT_GE(max_uniform_arc(p, default_tolerance(p)).s_max, 2.0 * std::cos(theta) - 2.0 * default_tolerance(p));
  }
}

TEST(MaxUniformArc, HalfGeodesicIsHalf) {
  const auto p = make_special(PolygonSurface::with_side(4, 2.0), {SpecialKind::HalfGeodesic, 0});
  EXPECT_NEAR(max_uniform_arc(p, default_tolerance(p)).s_max, p.length() / 2.0, 2.0 * default_tolerance(p));
}

TEST(MaxUniformArc, TriangleVShape) {
  const auto p = make_special(PolygonSurface::with_side(3, 1.0), {SpecialKind::VShape, 0});
  // l(g1) = sin t (1 + csc t) at inradius 1, t = pi/6, rescaled to side 1.
  const double t = kPi / 6.0;
  const double l1 = std::sin(t) * (1.0 + 1.0 / std::sin(t)) / (2.0 * std::sqrt(3.0));
  const double y = (1.0 - std::cos(kPi / 3.0)) / 2.0;
  const double x = l1 * y / (1.0 - y);
  EXPECT_NEAR(p.segment(0).length(), l1, 1e-12);
  EXPECT_NEAR(max_uniform_arc(p, default_tolerance(p)).s_max, 2.0 * x, 2.0 * default_tolerance(p));
}

TEST(MaxUniformArc, NeedsClosedPath) {
  const auto p = trace(PolygonSurface::with_side(5, 1.0), {0, 0.3}, 1.0, 3);
  EXPECT_THROW(max_uniform_arc(p, 1e-9), std::invalid_argument);
}

TEST(MinimizingIndex, OverUnderTriangle) {
  const auto r = minimizing_index(make_special(PolygonSurface::with_inradius(3, 1.0), {SpecialKind::OverUnder, 0}));
  EXPECT_EQ(r.minind, 6);
  expect_report_consistent(r);
}

TEST(MinimizingIndex, HalfGeodesics) {
  for (int n : {4, 6}) {
    const auto r = minimizing_index(make_special(PolygonSurface::with_side(n, 1.0), {SpecialKind::HalfGeodesic, 0}));
    EXPECT_EQ(r.minind, 2);
    expect_report_consistent(r);
  }
}

TEST(MinimizingIndex, MidpointStarsEqualPeriod) {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{9, 3}, {5, 1}, {6, 1}, {8, 1}, {8, 3}}) {
    const auto p = make_special(PolygonSurface::with_side(n, 1.0), {SpecialKind::MidpointStar, k});
    const auto r = minimizing_index(p);
    EXPECT_EQ(r.minind, p.period()) << "n=" << n << " k=" << k;
    expect_report_consistent(r);
  }
}

TEST(MinimizingIndex, DiskGeodesicsEqualPeriod) {
  for (auto [m, q, t] : std::vector<std::tuple<int, int, int>>{{4, 1, 1}, {3, 1, 2}, {8, 3, 1}, {5, 2, 2}, {2, 1, 2}}) {
    const auto p = make_disk_geodesic(DiskSurface(1.0), m, q, t);
    const auto r = minimizing_index(p);
    EXPECT_EQ(r.minind, m * t);
    expect_report_consistent(r);
  }
}

TEST(MinimizingIndex, VShapesRespectBound) {
  for (int n : {3, 5, 7}) {
    const auto p = make_special(PolygonSurface::with_side(n, 1.0), {SpecialKind::VShape, 0});
    const auto r = minimizing_index(p);
    ASSERT_TRUE(r.bounds.vshape_bound.has_value());
    ASSERT_TRUE(r.minind.has_value());
    EXPECT_GE(*r.minind, static_cast<int>(std::ceil(*r.bounds.vshape_bound - 1e-9)));
    expect_report_consistent(r);
  }
}

TEST(MinimizingIndex, CapGivesSentinel) {
  const auto p = make_special(PolygonSurface::with_side(7, 1.0), {SpecialKind::VShape, 0});
  const auto r = minimizing_index(p, 0.0, 10);
  EXPECT_FALSE(r.minind.has_value());
  EXPECT_GT(r.s_max, 0.0);
}

TEST(Bounds, VShapeAnchorAndGrowth) {
  EXPECT_NEAR(vshape_bound(3), 6.0, 1e-9);
  double prev = 0.0;
  for (int p = 3; p <= 401; p += 2) {
    const double x = kPi / p;
    EXPECT_NEAR(vshape_bound(p), 2.0 * (1.0 + std::cos(x)) / (1.0 - std::cos(x)), 1e-9 * vshape_bound(p));
    EXPECT_GT(vshape_bound(p), prev);
    prev = vshape_bound(p);
  }
  EXPECT_GT(prev, 1e4);
}

TEST(Bounds, PeriodBound) {
  const auto b = analytic_bounds(make_disk_geodesic(DiskSurface(1.0), 5, 2, 2));
  EXPECT_EQ(b.period_bound, 10);
  EXPECT_FALSE(b.vshape_bound.has_value());
}

TEST(Bounds, ConvergeBoundIsALowerBound) {
  for (int n : {5, 7}) {
    const auto p = make_special(PolygonSurface::with_inradius(n, 1.0), {SpecialKind::VShape, 0});
    const auto r = minimizing_index(p);
    ASSERT_TRUE(r.bounds.converge_bound.has_value());
    EXPECT_LE(*r.bounds.converge_bound, *r.minind + 1e-9);
  }
}

TEST(SurfaceIndex, Square) {
  SearchConfig cfg;
  cfg.max_bounces = 8;
  cfg.length_bound = 12.0;
  EXPECT_EQ(minind_of_surface(4, cfg).minind, 2);
}

TEST(SurfaceIndex, NineGon) {
  SearchConfig cfg;
  cfg.max_bounces = 8;
  cfg.length_bound = 12.0;
  const auto r = minind_of_surface(9, cfg);
  ASSERT_TRUE(r.minind.has_value());
  EXPECT_LE(*r.minind, 2 * smallest_prime_divisor(9));
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(skip_numbers(*r.witness), std::vector<int>(6, 3));
}

TEST(SurfaceIndex, Triangle) {
  const auto ou = make_special(PolygonSurface::with_inradius(3, 1.0), {SpecialKind::OverUnder, 0});
  SearchConfig cfg;
  cfg.max_bounces = 8;
  cfg.length_bound = 2.0 * ou.length();
  const auto r = minind_of_surface(3, cfg);
  EXPECT_EQ(r.minind, 6);
  EXPECT_FALSE(r.region.empty());
}

TEST(SurfaceIndex, SmallestPrimeDivisor) {
  EXPECT_EQ(smallest_prime_divisor(9), 3);
  EXPECT_EQ(smallest_prime_divisor(35), 5);
  EXPECT_EQ(smallest_prime_divisor(101), 101);
  EXPECT_EQ(smallest_prime_divisor(4), 2);
}
