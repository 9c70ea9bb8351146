#pragma once

// Doubled regular polygons X_n and the doubled disk.
//
// Coordinates: the polygon is centered at the origin with vertices listed
// counterclockwise. Edge e joins vertex e to vertex e+1 (mod n); edge 0 is
// horizontal at the bottom, centered on the negative y axis. "Counterclockwise"
// in skip numbers and vertex ratios always refers to this embedding.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "geokgon/geometry.hpp"

namespace geokgon {

enum class Face { Front, Back };

constexpr Face opposite(Face f) { return f == Face::Front ? Face::Back : Face::Front; }
inline const char* to_string(Face f) { return f == Face::Front ? "front" : "back"; }

/// A boundary point given as (edge index, fraction along the edge measured
/// counterclockwise from the edge's start vertex).
struct EdgeLocation {
  int edge{0};
  double u{0.5};
};

struct SurfacePoint {
  Face face{Face::Front};
  Vec2 position{};
};

class PolygonSurface {
 public:
  /// Regular n-gon with the given side length.
  static PolygonSurface with_side(int n, double side) { return PolygonSurface(n, side); }

  /// Regular n-gon with the given inradius (apothem).
  static PolygonSurface with_inradius(int n, double inradius) {
    if (n < 3) throw std::invalid_argument("polygon needs at least 3 sides");
    return PolygonSurface(n, 2.0 * inradius * std::tan(pi / n));
  }

  int sides() const { return n_; }
  double side_length() const { return side_; }
  double apothem() const { return side_ / (2.0 * std::tan(pi / n_)); }
  double circumradius() const { return side_ / (2.0 * std::sin(pi / n_)); }

  int wrap(int i) const { return ((i % n_) + n_) % n_; }
  Vec2 vertex(int i) const { return vertices_[static_cast<std::size_t>(wrap(i))]; }
  const std::vector<Vec2>& vertices() const { return vertices_; }

  /// Unit counterclockwise tangent of edge e.
  Vec2 edge_direction(int e) const { return directions_[static_cast<std::size_t>(wrap(e))]; }
  Vec2 outward_normal(int e) const { return -perp(edge_direction(e)); }
  Vec2 edge_midpoint(int e) const { return (vertex(e) + vertex(e + 1)) * 0.5; }

  /// Tolerance used to decide whether a planar point lies on the boundary.
  double boundary_tolerance() const { return 1e-10 * side_; }

  /// Signed distance of p to the line of edge e (positive outside).
  double edge_offset(int e, Vec2 p) const { return dot(p - vertex(e), outward_normal(e)); }

  bool contains(Vec2 p, double tol = -1.0) const {
    if (tol < 0.0) tol = boundary_tolerance();
    for (int e = 0; e < n_; ++e)
      if (edge_offset(e, p) > tol) return false;
    return true;
  }

  /// If p lies on the boundary (within tolerance) return its edge location.
  /// Vertices resolve to the edge they start.
  std::optional<EdgeLocation> locate_boundary(Vec2 p, double tol = -1.0) const {
    if (tol < 0.0) tol = boundary_tolerance();
    if (!contains(p, tol)) return std::nullopt;
    for (int e = 0; e < n_; ++e) {
      if (std::abs(edge_offset(e, p)) <= tol) {
        double u = dot(p - vertex(e), edge_direction(e)) / side_;
        u = std::clamp(u, 0.0, 1.0);
        if (u >= 1.0) return EdgeLocation{wrap(e + 1), 0.0};
        return EdgeLocation{e, u};
      }
    }
    return std::nullopt;
  }

  bool on_boundary(Vec2 p, double tol = -1.0) const { return locate_boundary(p, tol).has_value(); }

 private:
  PolygonSurface(int n, double side) : n_(n), side_(side) {
    if (n < 3) throw std::invalid_argument("polygon needs at least 3 sides");
    if (!(side > 0.0)) throw std::invalid_argument("side length must be positive");
    const Vec2 v0{-0.5 * side, -apothem()};
    vertices_.reserve(static_cast<std::size_t>(n));
    vertices_.push_back(v0);
    vertices_.push_back({0.5 * side, -apothem()});
    for (int k = 2; k < n; ++k) vertices_.push_back(rotate(v0, 2.0 * pi * k / n));
    // Taken from the angle rather than vertex differences, which lose
    // about n * eps for large n.
    directions_.push_back({1.0, 0.0});
    for (int k = 1; k < n; ++k) directions_.push_back(from_angle(2.0 * pi * k / n));
  }

  int n_;
  double side_;
  std::vector<Vec2> vertices_;
  std::vector<Vec2> directions_;
};

class DiskSurface {
 public:
  explicit DiskSurface(double radius = 1.0) : radius_(radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("disk radius must be positive");
  }
  double radius() const { return radius_; }
  double boundary_tolerance() const { return 1e-10 * radius_; }
  bool contains(Vec2 p, double tol = -1.0) const {
    if (tol < 0.0) tol = boundary_tolerance();
    return norm(p) <= radius_ + tol;
  }
  bool on_boundary(Vec2 p, double tol = -1.0) const {
    if (tol < 0.0) tol = boundary_tolerance();
    return std::abs(norm(p) - radius_) <= tol;
  }
  Vec2 boundary_point(double angle) const { return from_angle(angle) * radius_; }

 private:
  double radius_;
};

using Surface = std::variant<PolygonSurface, DiskSurface>;

struct SurfaceMetrics {
  double apothem{0.0};
  double circumradius{0.0};
  double perimeter{0.0};
  double doubled_area{0.0};
  double interior_angle{0.0};
  /// Circumradius + apothem: for odd n, the distance from an edge midpoint
  /// to the opposite vertex.
  double height{0.0};
};

inline SurfaceMetrics metrics(const PolygonSurface& s) {
  SurfaceMetrics m;
  m.apothem = s.apothem();
  m.circumradius = s.circumradius();
  m.perimeter = s.sides() * s.side_length();
  m.doubled_area = m.perimeter * m.apothem;
  m.interior_angle = pi - 2.0 * pi / s.sides();
  m.height = m.apothem + m.circumradius;
  return m;
}

inline SurfaceMetrics metrics(const DiskSurface& d) {
  const double r = d.radius();
  return {r, r, 2.0 * pi * r, 2.0 * pi * r * r, pi, 2.0 * r};
}

inline SurfaceMetrics metrics(const Surface& s) {
  return std::visit([](const auto& x) { return metrics(x); }, s);
}

inline SurfacePoint edge_point(const PolygonSurface& s, EdgeLocation loc) {
  if (loc.edge < 0 || loc.edge >= s.sides())
    throw std::out_of_range("edge index " + std::to_string(loc.edge) + " out of range");
  const Vec2 a = s.vertex(loc.edge);
  const Vec2 b = s.vertex(loc.edge + 1);
  return {Face::Front, a * (1.0 - loc.u) + b * loc.u};
}

/// Boundary points belong to both faces; they are normalized to Front.
inline SurfacePoint canonical_boundary(const PolygonSurface& s, SurfacePoint p) {
  if (s.on_boundary(p.position)) p.face = Face::Front;
  return p;
}

inline SurfacePoint canonical_boundary(const DiskSurface& d, SurfacePoint p) {
  if (d.on_boundary(p.position)) p.face = Face::Front;
  return p;
}

inline SurfacePoint canonical_boundary(const Surface& s, SurfacePoint p) {
  return std::visit([&](const auto& x) { return canonical_boundary(x, p); }, s);
}

inline bool on_boundary(const Surface& s, Vec2 p) {
  return std::visit([&](const auto& x) { return x.on_boundary(p); }, s);
}

/// Point equality up to the boundary normalization.
inline bool equivalent(const Surface& s, SurfacePoint a, SurfacePoint b, double tol = 1e-12) {
  a = canonical_boundary(s, a);
  b = canonical_boundary(s, b);
  return a.face == b.face && dist(a.position, b.position) <= tol;
}

inline double scale_of(const Surface& s) {
  if (const auto* p = std::get_if<PolygonSurface>(&s)) return p->side_length();
  return std::get<DiskSurface>(s).radius();
}

}  // namespace geokgon
