#pragma once

// Closed-geodesic search by shooting from the midpoint of edge 0.
//
// A closed geodesic can be slid inside its development until it passes an
// edge midpoint, and halfway around it then returns to a midpoint. So the
// search is one-dimensional: scan the start angle, watch the offset of the
// j-th hit from the target midpoint, and bisect sign changes. Every root is
// re-traced end to end before it is accepted.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "geokgon/metric.hpp"
#include "geokgon/parallel.hpp"
#include "geokgon/tracer.hpp"

namespace geokgon {

struct SearchConfig {
  int angle_grid{10000};
  int max_bounces{12};
  double length_bound{std::numeric_limits<double>::infinity()};
  double closure_tolerance{1e-9};
  double dedup_tolerance{1e-6};
  double root_tolerance{1e-12};

  void validate() const {
    if (angle_grid < 2 || max_bounces < 2 || !(length_bound > 0.0) || !(closure_tolerance > 0.0) ||
        !(dedup_tolerance > 0.0) || closure_tolerance > dedup_tolerance)
      throw std::invalid_argument("invalid search configuration");
  }
};

struct SpectrumEntry {
  GeodesicPath path;
  double length{0.0};
  int period{0};
  std::vector<int> skips;
  /// Number of distinct midpoint-start roots merged into this entry.
  int multiplicity{1};
};

namespace detail {

struct Shot {
  std::vector<int> edges;
  std::vector<double> params;
};

inline Shot shoot(const PolygonSurface& s, double angle, int bounces) {
  TraceOptions opt;
  opt.stop_when_closed = false;
  const GeodesicPath p = trace(s, {0, 0.5}, angle, bounces, opt);
  Shot shot;
  // A hit next to a vertex ends the usable prefix.
  const int usable = p.status() == TraceStatus::Ok ? p.segment_count() : p.segment_count() - 1;
  for (int k = 1; k <= usable; ++k) {
    shot.edges.push_back(p.hits()[static_cast<std::size_t>(k)].edge);
    shot.params.push_back(p.hits()[static_cast<std::size_t>(k)].param);
  }
  return shot;
}

inline bool is_target(const PolygonSurface& s, int edge) {
  return edge == 0 || (s.sides() % 2 == 0 && edge == s.sides() / 2);
}

/// Offset of hit j from a target midpoint, or nothing when hit j is missing
/// or lands elsewhere.
inline std::optional<double> offset(const PolygonSurface& s, const Shot& shot, int j, int& edge) {
  if (static_cast<int>(shot.edges.size()) < j) return std::nullopt;
  edge = shot.edges[static_cast<std::size_t>(j - 1)];
  if (!is_target(s, edge)) return std::nullopt;
  return shot.params[static_cast<std::size_t>(j - 1)] - 0.5;
}

}  // namespace detail

/// Closed geodesics through the midpoint of edge 0 with start angle in
/// (0, pi/2], period at most max_bounces and length at most length_bound,
/// deduplicated by (length, skip multiset) and sorted by length.
inline std::vector<SpectrumEntry> find_closed_geodesics(const PolygonSurface& s, const SearchConfig& config = {}) {
  config.validate();
  const int half = config.max_bounces / 2;
  const int grid = config.angle_grid;
  std::vector<detail::Shot> shots(static_cast<std::size_t>(grid));
  std::vector<double> angles(static_cast<std::size_t>(grid));
  for (int g = 0; g < grid; ++g) angles[static_cast<std::size_t>(g)] = 0.5 * pi * (g + 1) / grid;
  parallel_for(shots.size(), [&](std::size_t g) { shots[g] = detail::shoot(s, angles[g], half); });

  std::vector<double> roots;
  for (int j = 1; j <= half; ++j) {
    for (int g = 0; g < grid; ++g) {
      int edge0 = -1;
      const auto f0 = detail::offset(s, shots[static_cast<std::size_t>(g)], j, edge0);
      if (!f0) continue;
      if (*f0 == 0.0) {
        roots.push_back(angles[static_cast<std::size_t>(g)]);
        continue;
      }
      if (g + 1 >= grid) continue;
      int edge1 = -1;
      const auto f1 = detail::offset(s, shots[static_cast<std::size_t>(g) + 1], j, edge1);
      if (!f1 || edge1 != edge0 || *f1 == 0.0 || (*f0 > 0.0) == (*f1 > 0.0)) continue;
      double lo = angles[static_cast<std::size_t>(g)], hi = angles[static_cast<std::size_t>(g) + 1];
      double flo = *f0;
      bool ok = true;
      while (hi - lo > config.root_tolerance) {
        const double mid = 0.5 * (lo + hi);
        int e = -1;
        const auto fm = detail::offset(s, detail::shoot(s, mid, j), j, e);
        if (!fm || e != edge0) {
          ok = false;
          break;
        }
        if (*fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((*fm > 0.0) == (flo > 0.0)) {
          lo = mid;
          flo = *fm;
        } else {
          hi = mid;
        }
      }
      if (ok) roots.push_back(0.5 * (lo + hi));
    }
  }

  TraceOptions opt;
  opt.closure_position = config.closure_tolerance;
  opt.closure_direction = config.closure_tolerance;
  using Key = std::tuple<long long, std::vector<int>>;
  std::map<Key, SpectrumEntry> merged;
  std::map<Key, std::vector<double>> merged_roots;
  for (double theta : roots) {
    GeodesicPath path = trace(s, {0, 0.5}, theta, config.max_bounces, opt);
    if (path.status() != TraceStatus::Ok || !path.closed()) continue;
    if (path.length() > config.length_bound) continue;
    auto skips = skip_numbers(path);
    if (!is_palindrome(skips)) continue;
    auto sorted = skips;
    std::sort(sorted.begin(), sorted.end());
    Key key{std::llround(path.length() / config.dedup_tolerance), sorted};
    auto& seen = merged_roots[key];
    const bool duplicate = std::any_of(seen.begin(), seen.end(), [&](double r) {
      return std::abs(r - theta) <= 1e3 * config.root_tolerance;
    });
    if (duplicate) continue;
    seen.push_back(theta);
    auto it = merged.find(key);
    if (it == merged.end()) {
      const double len = path.length();
      const int period = path.period();
      merged.emplace(key, SpectrumEntry{std::move(path), len, period, skips, 1});
    } else {
      ++it->second.multiplicity;
    }
  }
  std::vector<SpectrumEntry> out;
  for (auto& [key, entry] : merged) out.push_back(std::move(entry));
  std::stable_sort(out.begin(), out.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
    if (a.length != b.length) return a.length < b.length;
    return a.skips < b.skips;
  });
  return out;
}

struct ShortestResult {
  SpectrumEntry entry;
  /// No other entry within the dedup tolerance of the minimum length.
  bool unique{true};
};

inline ShortestResult shortest_closed_geodesic(const PolygonSurface& s, const SearchConfig& config = {}) {
  auto entries = find_closed_geodesics(s, config);
  if (entries.empty()) throw std::runtime_error("search found no closed geodesic within budget");
  ShortestResult r{entries.front(), true};
  if (entries.size() > 1 && entries[1].length - entries[0].length <= config.dedup_tolerance) r.unique = false;
  return r;
}

struct WindingProfile {
  /// Counterclockwise arc between consecutive radially projected hits.
  std::vector<double> arcs;
  /// Sum of all arcs over 2pi.
  double winding{0.0};
  /// Winding of the first half of the path (midpoint to returning midpoint).
  double half_winding{0.0};
};

inline WindingProfile winding_profile(const GeodesicPath& path) {
  if (!path.closed()) throw std::invalid_argument("winding profile needs a closed path");
  WindingProfile w;
  double total = 0.0, half = 0.0;
  const int m = path.segment_count();
  for (int i = 0; i < m; ++i) {
    const double a0 = angle_of(path.hits()[static_cast<std::size_t>(i)].position);
    const double a1 = angle_of(path.hits()[static_cast<std::size_t>(i) + 1].position);
    const double arc = wrap_two_pi(a1 - a0);
    w.arcs.push_back(arc);
    total += arc;
    if (i < m / 2) half += arc;
  }
  w.winding = total / (2.0 * pi);
  w.half_winding = half / (2.0 * pi);
  return w;
}

struct RatioRow {
  int n{0};  // 0 marks the disk limit row
  double length{0.0};
  double diameter{0.0};
  double doubled_area{0.0};
  double length_over_diameter{0.0};
  double length_over_sqrt_area{0.0};
};

/// Shortest closed geodesic length against diameter and area for X_n with
/// inradius 1, followed by the unit disk limit row (L = 4 diam = 8).
/// The search only looks for curves no longer than the V-shape, which is
/// always a candidate.
inline std::vector<RatioRow> ratio_table(const std::vector<int>& ns, int diameter_grid = 32) {
  std::vector<RatioRow> rows;
  for (int n : ns) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("ratio table needs odd n >= 3");
    const auto s = PolygonSurface::with_inradius(n, 1.0);
    const double vshape = make_special(s, {SpecialKind::VShape, 0}).length();
    SearchConfig cfg;
    cfg.length_bound = vshape * (1.0 + 1e-9);
    cfg.max_bounces = std::max(8, 2 * n);
    const double len = shortest_closed_geodesic(s, cfg).entry.length;
    const double diam = diameter(Surface{s}, diameter_grid).diameter;
    const double area = metrics(s).doubled_area;
    rows.push_back({n, len, diam, area, len / diam, len / std::sqrt(area)});
  }
  const double area = 2.0 * pi;
  rows.push_back({0, 8.0, 2.0, area, 4.0, 8.0 / std::sqrt(area)});
  return rows;
}

}  // namespace geokgon
