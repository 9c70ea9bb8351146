#pragma once

// Geodesic distance on doubled polygons and the doubled disk.
//
// Polygon distances are found by depth-first search over unfolding chains:
// the face containing b is reflected across a sequence of edges and the
// straight segment from a to the image of b is kept only while it can still
// pass through every crossed edge. Chains are pruned against the best length
// found so far, which starts at the cheapest path through a vertex.

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "geokgon/geometry.hpp"
#include "geokgon/parallel.hpp"
#include "geokgon/surface.hpp"

namespace geokgon {

struct Window {
  Vec2 p{};
  Vec2 q{};
};

/// The copies visited by a straight path in the development. copies[k] maps
/// model coordinates of the k-th copy into the plane of the first one;
/// windows[k] is the part of crossed edge k the path may use.
struct UnfoldingChain {
  Face start_face{Face::Front};
  std::vector<int> edges;
  std::vector<Isometry> copies{Isometry{}};
  std::vector<Window> windows;
};

struct DistanceResult {
  double distance{0.0};
  std::vector<SurfacePoint> witness;
  UnfoldingChain chain{};
  int depth{0};
  /// False when the depth cap was reached with chains still able to improve.
  bool proven_optimal{true};
  /// The minimum coincides with a path through a vertex.
  bool vertex_grazing{false};
};

inline double witness_length(const DistanceResult& r) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < r.witness.size(); ++i)
    total += dist(r.witness[i].position, r.witness[i + 1].position);
  return total;
}

namespace detail {

struct UnfoldSearch {
  const PolygonSurface& s;
  Vec2 a;
  Vec2 b;
  Face face_b;
  bool b_boundary;
  int max_depth;
  double tol;

  double best;
  bool found_chain{false};
  UnfoldingChain best_chain{};
  Vec2 best_image{};
  bool live_at_cap{false};

  UnfoldingChain chain{};
  std::vector<Face> faces{};

  bool in_cone(const Window& w, Vec2 x) const {
    const double scale = norm(w.p - a) * norm(x - a) + norm(w.q - a) * norm(x - a);
    return cross(w.p - a, x - a) >= -tol * scale && cross(x - a, w.q - a) >= -tol * scale;
  }

  /// Part of segment [x0, x1] inside the cone through w, or nothing.
  bool clip(const Window& w, Vec2 x0, Vec2 x1, Window& out) const {
    double lo = 0.0, hi = 1.0;
    auto limit = [&](double f0, double f1) {
      // f(lambda) = f0 + (f1 - f0) lambda >= 0
      if (f0 < 0.0 && f1 < 0.0) return false;
      if (f0 >= 0.0 && f1 >= 0.0) return true;
      const double root = f0 / (f0 - f1);
      if (f0 < 0.0)
        lo = std::max(lo, root);
      else
        hi = std::min(hi, root);
      return true;
    };
    if (!limit(cross(w.p - a, x0 - a), cross(w.p - a, x1 - a))) return false;
    if (!limit(cross(x0 - a, w.q - a), cross(x1 - a, w.q - a))) return false;
    if (hi - lo <= 1e-13) return false;
    out = {x0 + (x1 - x0) * lo, x0 + (x1 - x0) * hi};
    return true;
  }

  void consider(Vec2 image, Face face) {
    if (face != face_b && !b_boundary) return;
    if (!chain.windows.empty() && !in_cone(chain.windows.back(), image)) return;
    const double d = dist(a, image);
    if (d < best) {
      best = d;
      found_chain = true;
      best_chain = chain;
      best_image = image;
    }
  }

  void run(int entered_edge) {
    const Isometry t = chain.copies.back();
    const Face face = faces.back();
    consider(t.apply(b), face);
    const int depth = static_cast<int>(chain.edges.size());

    struct Child {
      int edge;
      Window window;
      double distance;
    };
    std::vector<Child> children;
    for (int j = 0; j < s.sides(); ++j) {
      if (j == entered_edge) continue;
      const Vec2 x0 = t.apply(s.vertex(j));
      const Vec2 x1 = t.apply(s.vertex(j + 1));
      Window w;
      if (chain.windows.empty()) {
        if (std::abs(s.edge_offset(j, a)) <= s.boundary_tolerance()) continue;
        w = {x0, x1};
      } else if (!clip(chain.windows.back(), x0, x1, w)) {
        continue;
      }
      // Orient the window so that p is clockwise of q as seen from a.
      if (cross(w.p - a, w.q - a) < 0.0) std::swap(w.p, w.q);
      // Cones narrower than this only graze a vertex; the vertex bound covers them.
      if (cross(w.p - a, w.q - a) <= 1e-11 * norm(w.p - a) * norm(w.q - a)) continue;
      const double d = dist_to_segment(a, w.p, w.q);
      if (d >= best) continue;
      children.push_back({j, w, d});
    }
    if (children.empty()) return;
    if (depth >= max_depth) {
      live_at_cap = true;
      return;
    }
    std::sort(children.begin(), children.end(),
              [](const Child& l, const Child& r) { return l.distance < r.distance; });
    for (const Child& c : children) {
      if (c.distance >= best) continue;
      const Isometry mirror = Isometry::reflection(t.apply(s.vertex(c.edge)), t.apply(s.vertex(c.edge + 1)));
      chain.edges.push_back(c.edge);
      chain.windows.push_back(c.window);
      chain.copies.push_back(mirror.compose(t));
      faces.push_back(opposite(face));
      run(c.edge);
      chain.edges.pop_back();
      chain.windows.pop_back();
      chain.copies.pop_back();
      faces.pop_back();
    }
  }
};

inline std::vector<SurfacePoint> replay(const PolygonSurface& s, const UnfoldingChain& c, Vec2 a, Vec2 image,
                                        SurfacePoint b) {
  std::vector<SurfacePoint> out;
  out.push_back(canonical_boundary(s, {c.start_face, a}));
  for (std::size_t k = 0; k < c.edges.size(); ++k) {
    const Isometry& t = c.copies[k];
    const Vec2 p = t.apply(s.vertex(c.edges[k]));
    const Vec2 q = t.apply(s.vertex(c.edges[k] + 1));
    // Intersection of line a->image with line p->q.
    const Vec2 d = image - a;
    const double denom = cross(d, q - p);
    double lambda = denom != 0.0 ? cross(p - a, q - p) / denom : 0.0;
    lambda = std::clamp(lambda, 0.0, 1.0);
    const Vec2 x = a + d * lambda;
    Vec2 model = t.inverse().apply(x);
    // Snap onto the model edge.
    model = closest_on_segment(model, s.vertex(c.edges[k]), s.vertex(c.edges[k] + 1));
    out.push_back({Face::Front, model});
  }
  // A boundary endpoint can coincide with the last crossing.
  const SurfacePoint end = canonical_boundary(s, b);
  if (out.size() > 1 && dist(out.back().position, end.position) <= s.boundary_tolerance()) out.pop_back();
  out.push_back(end);
  return out;
}

}  // namespace detail

/// Shortest path length between two points of a doubled polygon over all
/// chains with at most max_depth edge crossings (0 selects 2n).
inline DistanceResult distance_polygon(const PolygonSurface& s, SurfacePoint a, SurfacePoint b, int max_depth = 0) {
  if (max_depth <= 0) max_depth = 2 * s.sides();
  const double slack = 1e-9 * s.side_length();
  if (!s.contains(a.position, slack) || !s.contains(b.position, slack))
    throw std::invalid_argument("point lies outside the polygon");
  a = canonical_boundary(s, a);
  b = canonical_boundary(s, b);
  const bool a_boundary = s.on_boundary(a.position);
  const bool b_boundary = s.on_boundary(b.position);

  double via_vertex = std::numeric_limits<double>::infinity();
  int via_index = 0;
  for (int v = 0; v < s.sides(); ++v) {
    const double d = dist(a.position, s.vertex(v)) + dist(s.vertex(v), b.position);
    if (d < via_vertex) {
      via_vertex = d;
      via_index = v;
    }
  }

  DistanceResult result;
  result.distance = via_vertex;
  result.witness = {a, {Face::Front, s.vertex(via_index)}, b};
  bool chain_found = false;
  bool live = false;

  std::vector<Face> starts{a.face};
  if (a_boundary) starts = {Face::Front, Face::Back};
  for (Face start : starts) {
    detail::UnfoldSearch search{s, a.position, b.position, b.face, b_boundary, max_depth, 1e-12, result.distance};
    search.chain.start_face = start;
    search.faces.push_back(start);
    search.run(-1);
    live = live || search.live_at_cap;
    if (search.found_chain && search.best < result.distance) {
      chain_found = true;
      result.distance = search.best;
      result.chain = search.best_chain;
      result.depth = static_cast<int>(search.best_chain.edges.size());
      result.witness = detail::replay(s, search.best_chain, a.position, search.best_image, b);
    }
  }
  result.proven_optimal = !live;
  result.vertex_grazing = !chain_found || std::abs(result.distance - via_vertex) <= 1e-12 * std::max(1.0, via_vertex);
  if (a_boundary && b_boundary && dist(a.position, b.position) <= 1e-15) result.vertex_grazing = false;
  return result;
}

/// Distance on the doubled disk. Points on opposite faces are joined through
/// the boundary point minimizing |a - Z| + |Z - b|.
inline DistanceResult distance_disk(const DiskSurface& disk, SurfacePoint a, SurfacePoint b) {
  const double slack = 1e-9 * disk.radius();
  if (!disk.contains(a.position, slack) || !disk.contains(b.position, slack))
    throw std::invalid_argument("point lies outside the disk");
  a = canonical_boundary(disk, a);
  b = canonical_boundary(disk, b);
  DistanceResult result;
  result.chain.start_face = a.face;
  if (a.face == b.face || disk.on_boundary(a.position) || disk.on_boundary(b.position)) {
    result.distance = dist(a.position, b.position);
    result.witness = {a, b};
    return result;
  }
  auto f = [&](double phi) {
    const Vec2 z = disk.boundary_point(phi);
    return dist(a.position, z) + dist(z, b.position);
  };
  constexpr int samples = 720;
  const double step = 2.0 * pi / samples;
  std::vector<double> values(samples);
  for (int i = 0; i < samples; ++i) values[static_cast<std::size_t>(i)] = f(i * step);
  double best = std::numeric_limits<double>::infinity();
  double best_phi = 0.0;
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i = 0; i < samples; ++i) {
    const double here = values[static_cast<std::size_t>(i)];
    const double prev = values[static_cast<std::size_t>((i + samples - 1) % samples)];
    const double next = values[static_cast<std::size_t>((i + 1) % samples)];
    if (here > prev || here > next) continue;
    double lo = (i - 1) * step, hi = (i + 1) * step;
    double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > 1e-12) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - golden * (hi - lo);
        f1 = f(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + golden * (hi - lo);
        f2 = f(x2);
      }
    }
    const double phi = 0.5 * (lo + hi);
    const double value = f(phi);
    if (value < best) {
      best = value;
      best_phi = phi;
    }
  }
  result.distance = best;
  result.depth = 1;
  result.witness = {a, {Face::Front, disk.boundary_point(best_phi)}, b};
  return result;
}

inline DistanceResult distance(const Surface& s, SurfacePoint a, SurfacePoint b, int max_depth = 0) {
  if (const auto* p = std::get_if<PolygonSurface>(&s)) return distance_polygon(*p, a, b, max_depth);
  return distance_disk(std::get<DiskSurface>(s), a, b);
}

/// Boundary samples used by the mesh oracle and the diameter search:
/// `per_side` points per polygon edge (vertices included) or 4*per_side
/// points around the disk.
inline std::vector<Vec2> boundary_samples(const Surface& s, int per_side) {
  std::vector<Vec2> out;
  if (const auto* p = std::get_if<PolygonSurface>(&s)) {
    for (int e = 0; e < p->sides(); ++e)
      for (int i = 0; i < per_side; ++i)
        out.push_back(edge_point(*p, {e, static_cast<double>(i) / per_side}).position);
  } else {
    const auto& d = std::get<DiskSurface>(s);
    const int count = 4 * per_side;
    for (int i = 0; i < count; ++i) out.push_back(d.boundary_point(-pi / 2.0 + 2.0 * pi * i / count));
  }
  return out;
}

/// Approximate distance from a graph on boundary samples plus a and b, with
/// straight edges between points visible on a common face.
inline double mesh_oracle(const Surface& s, int resolution, SurfacePoint a, SurfacePoint b) {
  if (resolution < 20) throw std::invalid_argument("mesh resolution must be at least 20 per side");
  a = canonical_boundary(s, a);
  b = canonical_boundary(s, b);
  std::vector<Vec2> nodes = boundary_samples(s, resolution);
  const std::size_t ia = nodes.size();
  nodes.push_back(a.position);
  nodes.push_back(b.position);
  const std::size_t ib = ia + 1;
  const bool a_boundary = on_boundary(s, a.position);
  const bool b_boundary = on_boundary(s, b.position);
  auto connected = [&](std::size_t i, std::size_t j) {
    if (i < ia && j < ia) return true;
    if ((i == ia && j == ib) || (i == ib && j == ia)) return a.face == b.face || a_boundary || b_boundary;
    return true;
  };
  const std::size_t count = nodes.size();
  std::vector<double> best(count, std::numeric_limits<double>::infinity());
  std::vector<char> done(count, 0);
  best[ia] = 0.0;
  for (std::size_t iter = 0; iter < count; ++iter) {
    std::size_t u = count;
    for (std::size_t i = 0; i < count; ++i)
      if (!done[i] && (u == count || best[i] < best[u])) u = i;
    if (u == count || !std::isfinite(best[u])) break;
    if (u == ib) break;
    done[u] = 1;
    for (std::size_t v = 0; v < count; ++v) {
      if (done[v] || !connected(u, v)) continue;
      const double cand = best[u] + dist(nodes[u], nodes[v]);
      if (cand < best[v]) best[v] = cand;
    }
  }
  if (!std::isfinite(best[ib])) throw std::runtime_error("mesh graph is disconnected");
  return best[ib];
}

struct DiameterResult {
  double diameter{0.0};
  SurfacePoint a;
  SurfacePoint b;
};

namespace detail {

inline Vec2 project_inside(const Surface& s, Vec2 p) {
  if (const auto* poly = std::get_if<PolygonSurface>(&s)) {
    if (poly->contains(p, 0.0)) return p;
    Vec2 best = poly->vertex(0);
    double best_d = std::numeric_limits<double>::infinity();
    for (int e = 0; e < poly->sides(); ++e) {
      const Vec2 c = closest_on_segment(p, poly->vertex(e), poly->vertex(e + 1));
      if (dist(c, p) < best_d) {
        best_d = dist(c, p);
        best = c;
      }
    }
    return best;
  }
  const double r = std::get<DiskSurface>(s).radius();
  return norm(p) > r ? p * (r / norm(p)) : p;
}

/// Cheap upper bound on the distance, used to skip hopeless pairs.
inline double distance_upper_bound(const Surface& s, SurfacePoint a, SurfacePoint b) {
  double bound = std::numeric_limits<double>::infinity();
  if (a.face == b.face || on_boundary(s, a.position) || on_boundary(s, b.position))
    bound = dist(a.position, b.position);
  if (const auto* p = std::get_if<PolygonSurface>(&s)) {
    for (int v = 0; v < p->sides(); ++v)
      bound = std::min(bound, dist(a.position, p->vertex(v)) + dist(p->vertex(v), b.position));
  } else {
    const auto& d = std::get<DiskSurface>(s);
    const Vec2 z = d.boundary_point(norm(a.position) > 0.0 ? angle_of(a.position) : 0.0);
    bound = std::min(bound, dist(a.position, z) + dist(z, b.position));
  }
  return bound;
}

}  // namespace detail

/// Largest distance between two points. One point ranges over a fundamental
/// wedge of the dihedral symmetry on the front face, the other over a lattice
/// on both faces plus boundary samples; the best pairs are refined by a
/// pattern search.
inline DiameterResult diameter(const Surface& s, int grid = 32) {
  if (grid < 32) throw std::invalid_argument("diameter grid must be at least 32");
  const double r = std::visit([](const auto& x) { return metrics(x).circumradius; }, s);
  const double h = 2.0 * r / grid;
  const int n = std::holds_alternative<PolygonSurface>(s) ? std::get<PolygonSurface>(s).sides() : 0;
  const double tol = 1e-12 * r;

  std::vector<SurfacePoint> second;
  std::vector<Vec2> lattice;
  for (int i = 0; i <= grid; ++i)
    for (int j = 0; j <= grid; ++j) {
      const Vec2 p{-r + i * h, -r + j * h};
      const bool inside = n > 0 ? std::get<PolygonSurface>(s).contains(p, -tol) : norm(p) < r - tol;
      if (inside) lattice.push_back(p);
    }
  for (const Vec2& p : lattice) {
    second.push_back({Face::Front, p});
    second.push_back({Face::Back, p});
  }
  const auto boundary = boundary_samples(s, grid);
  for (const Vec2& p : boundary) second.push_back({Face::Front, p});

  std::vector<SurfacePoint> first;
  auto in_wedge = [&](Vec2 p) {
    if (n == 0) return std::abs(p.x) <= tol && p.y <= tol;
    double ang = std::atan2(p.y, p.x) + pi / 2.0;
    if (norm(p) <= tol) return true;
    return ang >= -1e-12 && ang <= pi / n + 1e-12;
  };
  for (const Vec2& p : lattice)
    if (in_wedge(p)) first.push_back({Face::Front, p});
  if (n == 0) {
    for (int i = 0; i <= grid; ++i) first.push_back({Face::Front, {0.0, -r * i / grid}});
  }
  for (const Vec2& p : boundary)
    if (in_wedge(p)) first.push_back({Face::Front, p});
  first.push_back({Face::Front, {0.0, 0.0}});

  struct Pair {
    double d;
    std::size_t i;
    std::size_t j;
  };
  std::vector<std::vector<Pair>> per_first(first.size());
  parallel_for(first.size(), [&](std::size_t i) {
    double local_best = 0.0;
    std::vector<Pair> top;
    for (std::size_t j = 0; j < second.size(); ++j) {
      if (detail::distance_upper_bound(s, first[i], second[j]) <= local_best * (1.0 - 1e-3)) continue;
      const double d = distance(s, first[i], second[j]).distance;
      top.push_back({d, i, j});
      local_best = std::max(local_best, d);
    }
    std::sort(top.begin(), top.end(), [](const Pair& l, const Pair& r2) { return l.d > r2.d; });
    if (top.size() > 4) top.resize(4);
    per_first[i] = std::move(top);
  });
  std::vector<Pair> all;
  for (const auto& v : per_first) all.insert(all.end(), v.begin(), v.end());
  std::sort(all.begin(), all.end(), [](const Pair& l, const Pair& r2) {
    if (l.d != r2.d) return l.d > r2.d;
    return std::make_pair(l.i, l.j) < std::make_pair(r2.i, r2.j);
  });
  if (all.size() > 8) all.resize(8);

  DiameterResult best;
  for (const Pair& pr : all) {
    SurfacePoint pa = first[pr.i];
    SurfacePoint pb = second[pr.j];
    double value = pr.d;
    double step = h;
    while (step > 1e-7 * r) {
      bool improved = false;
      const Vec2 dirs[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
      for (int which = 0; which < 2; ++which)
        for (const Vec2& d : dirs) {
          SurfacePoint ca = pa, cb = pb;
          SurfacePoint& moved = which == 0 ? ca : cb;
          moved.position = detail::project_inside(s, moved.position + d * step);
          const double v = distance(s, ca, cb).distance;
          if (v > value * (1.0 + 1e-15)) {
            value = v;
            pa = ca;
            pb = cb;
            improved = true;
          }
        }
      if (!improved) step *= 0.5;
    }
    if (value > best.diameter) best = {value, pa, pb};
  }
  return best;
}

}  // namespace geokgon
