#pragma once

#include <cmath>
#include <numbers>

namespace geokgon {

inline constexpr double pi = std::numbers::pi;

struct Vec2 {
  double x{0.0};
  double y{0.0};

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }
inline Vec2 unit(Vec2 v) { return v / norm(v); }
inline Vec2 from_angle(double a) { return {std::cos(a), std::sin(a)}; }
inline double angle_of(Vec2 v) { return std::atan2(v.y, v.x); }
constexpr Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

inline Vec2 rotate(Vec2 v, double a) {
  const double c = std::cos(a), s = std::sin(a);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Reduce an angle into [0, 2pi).
inline double wrap_two_pi(double a) {
  a = std::fmod(a, 2.0 * pi);
  return a < 0.0 ? a + 2.0 * pi : a;
}

/// Closest point of segment [p, q] to x.
inline Vec2 closest_on_segment(Vec2 x, Vec2 p, Vec2 q) {
  const Vec2 d = q - p;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return p;
  double t = dot(x - p, d) / len2;
  t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
  return p + d * t;
}

inline double dist_to_segment(Vec2 x, Vec2 p, Vec2 q) {
  return dist(x, closest_on_segment(x, p, q));
}

/// Planar isometry x -> linear * x + offset, stored column-major as two columns.
struct Isometry {
  Vec2 col0{1.0, 0.0};
  Vec2 col1{0.0, 1.0};
  Vec2 offset{0.0, 0.0};

  Vec2 apply(Vec2 p) const { return col0 * p.x + col1 * p.y + offset; }
  Vec2 apply_linear(Vec2 v) const { return col0 * v.x + col1 * v.y; }

  /// this ∘ other
  Isometry compose(const Isometry& other) const {
    return {apply_linear(other.col0), apply_linear(other.col1), apply(other.offset)};
  }

  Isometry inverse() const {
    // Orthogonal linear part: inverse is the transpose.
    const Vec2 r0{col0.x, col1.x};
    const Vec2 r1{col0.y, col1.y};
    Isometry inv{r0, r1, {0.0, 0.0}};
    inv.offset = -inv.apply_linear(offset);
    return inv;
  }

  /// Mirror across the line through p and q.
  static Isometry reflection(Vec2 p, Vec2 q) {
    const Vec2 t = unit(q - p);
    // R = 2 t t^T - I
    const Vec2 c0{2.0 * t.x * t.x - 1.0, 2.0 * t.x * t.y};
    const Vec2 c1{2.0 * t.x * t.y, 2.0 * t.y * t.y - 1.0};
    Isometry r{c0, c1, {0.0, 0.0}};
    r.offset = p - r.apply_linear(p);
    return r;
  }
};

}  // namespace geokgon
