#pragma once

// Geodesics on doubled polygons are signed billiard paths: straight chords
// that alternate faces and reflect at every edge hit. On the doubled disk the
// closed geodesics are inscribed regular polygons and stars.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "geokgon/geometry.hpp"
#include "geokgon/surface.hpp"

namespace geokgon {

/// A point where a geodesic meets the boundary. On a polygon `edge` and
/// `param` are the edge location (param = u); on the disk `edge` is -1 and
/// `param` is the boundary angle in [0, 2pi).
struct BoundaryHit {
  Vec2 position{};
  int edge{-1};
  double param{0.0};
};

struct PathSegment {
  Face face{Face::Front};
  BoundaryHit start;
  BoundaryHit end;
  double length() const { return dist(start.position, end.position); }
};

enum class TraceStatus { Ok, VertexCollision };

class GeodesicPath {
 public:
  GeodesicPath(Surface surface, std::vector<BoundaryHit> hits, Face first_face = Face::Front)
      : surface_(std::move(surface)), hits_(std::move(hits)), first_face_(first_face) {
    cumulative_.assign(1, 0.0);
    for (std::size_t i = 0; i + 1 < hits_.size(); ++i)
      cumulative_.push_back(cumulative_.back() + dist(hits_[i].position, hits_[i + 1].position));
  }

  const Surface& surface() const { return surface_; }
  const PolygonSurface* polygon() const { return std::get_if<PolygonSurface>(&surface_); }
  const DiskSurface* disk() const { return std::get_if<DiskSurface>(&surface_); }

  /// hits().size() == segment_count() + 1; for closed paths the last hit
  /// repeats the first.
  const std::vector<BoundaryHit>& hits() const { return hits_; }
  int segment_count() const { return static_cast<int>(hits_.size()) - 1; }
  Face first_face() const { return first_face_; }
  Face face(int i) const { return (i % 2 == 0) ? first_face_ : opposite(first_face_); }
  PathSegment segment(int i) const {
    const auto k = static_cast<std::size_t>(i);
    return {face(i), hits_[k], hits_[k + 1]};
  }

  bool closed() const { return closed_; }
  int period() const { return closed_ ? segment_count() : 0; }
  double length() const { return cumulative_.back(); }
  double start_angle() const { return start_angle_; }
  TraceStatus status() const { return status_; }
  /// Arc length at the start of segment i (i may equal segment_count()).
  double arc_at_hit(int i) const { return cumulative_[static_cast<std::size_t>(i)]; }

  void set_closed(bool c) { closed_ = c; }
  void set_start_angle(double a) { start_angle_ = a; }
  void set_status(TraceStatus s) { status_ = s; }

  Vec2 direction(int i) const { return unit(segment(i).end.position - segment(i).start.position); }

  /// Angle of segment i measured from the counterclockwise tangent of the
  /// boundary at its start point, in (0, pi).
  double incidence_angle(int i) const {
    const BoundaryHit& h = hits_[static_cast<std::size_t>(i)];
    Vec2 t;
    if (const auto* p = polygon())
      t = p->edge_direction(h.edge);
    else
      t = perp(unit(h.position));
    const Vec2 d = direction(i);
    return std::atan2(cross(t, d), dot(t, d));
  }

  /// Point at arc length t from the first hit; closed paths wrap around.
  SurfacePoint point_at(double t) const {
    const double total = length();
    if (closed_) {
      t = std::fmod(t, total);
      if (t < 0.0) t += total;
    } else {
      t = std::clamp(t, 0.0, total);
    }
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), t);
    int i = static_cast<int>(it - cumulative_.begin()) - 1;
    i = std::clamp(i, 0, segment_count() - 1);
    const PathSegment seg = segment(i);
    const double seg_len = cumulative_[static_cast<std::size_t>(i) + 1] - cumulative_[static_cast<std::size_t>(i)];
    const double lambda = seg_len > 0.0 ? (t - cumulative_[static_cast<std::size_t>(i)]) / seg_len : 0.0;
    SurfacePoint sp{seg.face, seg.start.position * (1.0 - lambda) + seg.end.position * lambda};
    if (lambda == 0.0) sp.position = seg.start.position;
    return canonical_boundary(surface_, sp);
  }

 private:
  Surface surface_;
  std::vector<BoundaryHit> hits_;
  Face first_face_;
  std::vector<double> cumulative_;
  bool closed_{false};
  double start_angle_{0.0};
  TraceStatus status_{TraceStatus::Ok};
};

struct TraceOptions {
  /// Distance to a vertex (in side lengths) below which a trace is aborted.
  double vertex_epsilon{1e-9};
  /// Closure: position error in side lengths and direction error in radians.
  double closure_position{1e-9};
  double closure_direction{1e-9};
  /// Stop as soon as the path closes up.
  bool stop_when_closed{true};
};

/// Trace a geodesic from an edge point. `angle` is measured from the
/// counterclockwise direction of the start edge into the polygon.
inline GeodesicPath trace(const PolygonSurface& s, EdgeLocation start, double angle, int max_bounces,
                          const TraceOptions& opt = {}) {
  if (start.edge < 0 || start.edge >= s.sides()) throw std::out_of_range("start edge out of range");
  if (!(start.u > 0.0 && start.u < 1.0)) throw std::invalid_argument("start parameter must lie in (0,1)");
  if (!(angle > 0.0 && angle < pi)) throw std::invalid_argument("degenerate start angle");
  if (max_bounces < 1) throw std::invalid_argument("max_bounces must be positive");

  const int n = s.sides();
  const double side = s.side_length();
  std::vector<BoundaryHit> hits;
  Vec2 p = edge_point(s, start).position;
  hits.push_back({p, start.edge, start.u});
  const Vec2 dir0 = rotate(s.edge_direction(start.edge), angle);
  Vec2 dir = dir0;
  int edge = start.edge;
  bool closed = false;
  TraceStatus status = TraceStatus::Ok;

  for (int k = 0; k < max_bounces; ++k) {
    double best_t = std::numeric_limits<double>::infinity();
    int best_e = -1;
    for (int j = 0; j < n; ++j) {
      if (j == edge) continue;
      const Vec2 nj = s.outward_normal(j);
      const double nd = dot(dir, nj);
      if (nd <= 0.0) continue;
      const double t = -s.edge_offset(j, p) / nd;
      if (t < best_t) {
        best_t = t;
        best_e = j;
      }
    }
    if (best_e < 0) throw std::runtime_error("trace left the polygon");
    const Vec2 q = p + dir * best_t;
    double u = dot(q - s.vertex(best_e), s.edge_direction(best_e)) / side;
    const double corner = std::min(u, 1.0 - u);
    u = std::clamp(u, 0.0, 1.0);
    const Vec2 snapped = edge_point(s, {best_e, u}).position;
    hits.push_back({snapped, best_e, u});
    if (corner < opt.vertex_epsilon) {
      status = TraceStatus::VertexCollision;
      break;
    }
    const Vec2 nrm = s.outward_normal(best_e);
    dir = unit(dir - nrm * (2.0 * dot(dir, nrm)));
    p = snapped;
    edge = best_e;
    if ((k + 1) % 2 == 0 && best_e == start.edge &&
        dist(p, hits.front().position) <= opt.closure_position * side &&
        std::abs(std::atan2(cross(dir0, dir), dot(dir0, dir))) <= opt.closure_direction) {
      closed = true;
      if (opt.stop_when_closed) break;
    }
  }
  GeodesicPath path(s, std::move(hits));
  path.set_closed(closed);
  path.set_start_angle(angle);
  path.set_status(status);
  if (closed) {
    // Make the closing hit bit-identical to the start.
    auto h = path.hits();
    h.back() = h.front();
    GeodesicPath exact(s, std::move(h));
    exact.set_closed(true);
    exact.set_start_angle(angle);
    return exact;
  }
  return path;
}

/// Skip number of each segment: vertices passed counterclockwise,
/// (end_edge - start_edge) mod n.
inline std::vector<int> skip_numbers(const GeodesicPath& path) {
  const auto* s = path.polygon();
  if (s == nullptr) throw std::invalid_argument("skip numbers are defined on polygons only");
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(path.segment_count()));
  for (int i = 0; i < path.segment_count(); ++i) {
    const auto seg = path.segment(i);
    out.push_back(s->wrap(seg.end.edge - seg.start.edge));
  }
  return out;
}

enum class Orientation { Counterclockwise, Clockwise };

/// Vertex ratio a/(a+b) at every edge hit, where a is the part of the edge
/// toward its clockwise vertex. For a closed path the repeated closing hit is
/// omitted. The clockwise reading reports b/(a+b) instead.
inline std::vector<double> vertex_ratios(const GeodesicPath& path,
                                         Orientation o = Orientation::Counterclockwise) {
  if (path.polygon() == nullptr) throw std::invalid_argument("vertex ratios are defined on polygons only");
  std::vector<double> out;
  const int count = path.closed() ? path.segment_count() : path.segment_count() + 1;
  for (int i = 0; i < count; ++i) {
    const double u = path.hits()[static_cast<std::size_t>(i)].param;
    out.push_back(o == Orientation::Counterclockwise ? u : 1.0 - u);
  }
  return out;
}

/// Alternating partial sums S_j = sum_{k<=j} (-1)^(k+1) s_k.
inline std::vector<long long> alternating_partials(const std::vector<int>& skips) {
  std::vector<long long> out;
  long long acc = 0;
  for (std::size_t k = 0; k < skips.size(); ++k) {
    acc += (k % 2 == 0) ? skips[k] : -static_cast<long long>(skips[k]);
    out.push_back(acc);
  }
  return out;
}

inline bool is_palindrome(const std::vector<int>& s) {
  return std::equal(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(s.size() / 2), s.rbegin());
}

inline std::vector<int> rotated(const std::vector<int>& s, std::size_t r) {
  std::vector<int> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[(r + i) % s.size()];
  return out;
}

enum class SpecialKind { VShape, OverUnder, MidpointStar, HalfGeodesic };

struct SpecialGeodesic {
  SpecialKind kind{SpecialKind::VShape};
  /// Star step for MidpointStar, edge index for HalfGeodesic.
  int parameter{0};
};

/// Period of a midpoint star with the given step on X_n.
inline int midpoint_star_period(int n, int step) {
  const int cycle = n / std::gcd(n, step);
  return cycle % 2 == 0 ? cycle : 2 * cycle;
}

/// The named closed geodesics. All start at the midpoint of an edge.
inline GeodesicPath make_special(const PolygonSurface& s, SpecialGeodesic kind) {
  const int n = s.sides();
  EdgeLocation start{0, 0.5};
  double angle = 0.0;
  int period = 0;
  switch (kind.kind) {
    case SpecialKind::VShape:
      if (n % 2 == 0) throw std::invalid_argument("V-shaped geodesics need an odd number of sides");
      angle = pi / 2.0 - pi / n;
      period = 4;
      break;
    case SpecialKind::OverUnder:
      angle = pi / n;
      period = midpoint_star_period(n, 1);
      break;
    case SpecialKind::MidpointStar: {
      const int k = kind.parameter;
      if (k < 1 || 2 * k >= n)
        throw std::invalid_argument("midpoint star step must satisfy 1 <= step < n/2");
      angle = pi * k / n;
      period = midpoint_star_period(n, k);
      break;
    }
    case SpecialKind::HalfGeodesic:
      if (n % 2 != 0) throw std::invalid_argument("half geodesics need an even number of sides");
      if (kind.parameter < 0 || kind.parameter >= n / 2)
        throw std::invalid_argument("half geodesic index must lie in [0, n/2)");
      start.edge = kind.parameter;
      angle = pi / 2.0;
      period = 2;
      break;
  }
  GeodesicPath path = trace(s, start, angle, period);
  if (!path.closed() || path.period() != period)
    throw std::runtime_error("special geodesic failed to close with period " + std::to_string(period));
  return path;
}

/// Translate a closed geodesic inside its development so that it starts at
/// an edge midpoint with a palindromic skip sequence.
inline GeodesicPath canonicalize_to_midpoint(const GeodesicPath& path) {
  const auto* s = path.polygon();
  if (s == nullptr || !path.closed()) throw std::invalid_argument("canonicalization needs a closed polygon geodesic");
  if (path.status() != TraceStatus::Ok) throw std::invalid_argument("path has a vertex collision");
  const auto skips = skip_numbers(path);
  const auto m = skips.size();
  for (std::size_t r = 0; r < m; ++r) {
    const auto rot = rotated(skips, r);
    if (!is_palindrome(rot)) continue;
    const int edge = path.hits()[r].edge;
    const double angle = path.incidence_angle(static_cast<int>(r));
    GeodesicPath moved = trace(*s, {edge, 0.5}, angle, static_cast<int>(m));
    if (moved.status() != TraceStatus::Ok || !moved.closed() || skip_numbers(moved) != rot)
      throw std::runtime_error("translation to the midpoint crossed a vertex");
    return moved;
  }
  throw std::runtime_error("no rotation of the skip sequence is palindromic");
}

/// Closed geodesic on the doubled disk shaped as the regular {m/q} polygon or
/// star, traversed `traversals` times, first vertex at angle -pi/2.
inline GeodesicPath make_disk_geodesic(const DiskSurface& disk, int m, int q, int traversals) {
  if (m < 2 || q < 1 || traversals < 1) throw std::invalid_argument("invalid disk geodesic parameters");
  if (std::gcd(m, q) != 1) throw std::invalid_argument("gcd(m, q) must be 1");
  if (2 * q > m) throw std::invalid_argument("step must satisfy q <= m/2");
  if ((m * traversals) % 2 != 0) throw std::invalid_argument("total segment count must be even");
  std::vector<BoundaryHit> hits;
  const int total = m * traversals;
  for (int j = 0; j <= total; ++j) {
    const int k = (q * j) % m;
    const double phi = -pi / 2.0 + 2.0 * pi * k / m;
    hits.push_back({disk.boundary_point(phi), -1, wrap_two_pi(phi)});
  }
  GeodesicPath path(disk, std::move(hits));
  path.set_closed(true);
  path.set_start_angle(pi / 2.0 - pi * q / m);
  return path;
}

}  // namespace geokgon
