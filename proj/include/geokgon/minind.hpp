#pragma once

// Minimizing index: the smallest k >= 2 such that every arc of length L/k of
// a closed geodesic realizes the distance between its endpoints.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "geokgon/metric.hpp"
#include "geokgon/parallel.hpp"
#include "geokgon/spectra.hpp"
#include "geokgon/tracer.hpp"

namespace geokgon {

/// A distance query could not be settled within its search limits.
struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double default_tolerance(const GeodesicPath& path) { return 1e-7 * path.length(); }

/// Whether the arc of length s starting at arclength t0 is length-minimizing
/// up to tol.
inline bool is_minimizing_arc(const GeodesicPath& path, double t0, double s, double tol) {
  if (!(s > 0.0) || s > 0.5 * path.length() + tol) throw std::invalid_argument("arc length must lie in (0, L/2]");
  const SurfacePoint a = path.point_at(t0);
  const SurfacePoint b = path.point_at(t0 + s);
  const DistanceResult r = distance(path.surface(), a, b);
  const bool minimizing = r.distance >= s - tol;
  if (minimizing && !r.proven_optimal) throw NumericalFailure("distance search reached its depth cap");
  return minimizing;
}

/// m(t): the longest arc starting at t that still minimizes, capped at L/2.
inline double max_minimizing_length(const GeodesicPath& path, double t, double tol) {
  double hi = 0.5 * path.length();
  if (is_minimizing_arc(path, t, hi, tol)) return hi;
  double lo = 0.0;
  while (hi - lo > 0.25 * tol) {
    const double mid = 0.5 * (lo + hi);
    if (is_minimizing_arc(path, t, mid, tol))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

struct ArcProfile {
  double s_max{0.0};
  /// Start of an arc attaining s_max.
  double witness_t{0.0};
  std::vector<double> samples;
  std::vector<double> values;
};

/// Minimum of m(t) over sample starts: `samples` uniform points (0 selects
/// 8 per segment), every hit, 8 points within L/1000 of each hit, and a
/// golden-section refinement around the smallest sample.
inline ArcProfile max_uniform_arc(const GeodesicPath& path, double tol, int samples = 0) {
  if (!path.closed()) throw std::invalid_argument("minimizing arcs are defined for closed paths");
  const int period = path.period();
  if (samples <= 0) samples = 8 * period;
  if (samples < 8 * period) throw std::invalid_argument("need at least 8 samples per segment");
  const double L = path.length();
  ArcProfile prof;
  for (int i = 0; i < samples; ++i) prof.samples.push_back(L * i / samples);
  for (int h = 0; h < period; ++h) {
    const double t = path.arc_at_hit(h);
    prof.samples.push_back(t);
    for (int k = 1; k <= 4; ++k) {
      prof.samples.push_back(t + k * L / 4000.0);
      prof.samples.push_back(t - k * L / 4000.0);
    }
  }
  for (double& t : prof.samples) t = std::fmod(t + L, L);
  prof.values.resize(prof.samples.size());
  parallel_for(prof.samples.size(),
               [&](std::size_t i) { prof.values[i] = max_minimizing_length(path, prof.samples[i], tol); });
  const auto best = static_cast<std::size_t>(std::min_element(prof.values.begin(), prof.values.end()) - prof.values.begin());
  prof.s_max = prof.values[best];
  prof.witness_t = prof.samples[best];

  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = prof.witness_t - L / samples, hi = prof.witness_t + L / samples;
  double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
  double f1 = max_minimizing_length(path, x1, tol), f2 = max_minimizing_length(path, x2, tol);
  auto keep = [&](double t, double v) {
    if (v < prof.s_max) {
      prof.s_max = v;
      prof.witness_t = std::fmod(t + 2.0 * L, L);
    }
  };
  keep(x1, f1);
  keep(x2, f2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - golden * (hi - lo);
      f1 = max_minimizing_length(path, x1, tol);
      keep(x1, f1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + golden * (hi - lo);
      f2 = max_minimizing_length(path, x2, tol);
      keep(x2, f2);
    }
  }
  return prof;
}

struct MinindBounds {
  int period_bound{0};
  std::optional<double> vshape_bound;
  std::optional<double> converge_bound;
};

struct MinindReport {
  double length{0.0};
  int period{0};
  double s_max{0.0};
  double witness_t{0.0};
  /// Empty when no k up to the cap works.
  std::optional<int> minind;
  MinindBounds bounds;
  double tolerance{0.0};
  /// L/minind arcs minimize at every sample and L/(minind-1) fails at the
  /// witness start.
  bool verified{false};
};

/// Lower bound for the V-shaped geodesic on X_p, following 2 h sin(pi/p) /
/// (1 - h sin(pi/p)) with side 1; equals 2 (1 + cos(pi/p)) / (1 - cos(pi/p)).
inline double vshape_bound(int p) {
  if (p < 3 || p % 2 == 0) throw std::invalid_argument("V-shape bound needs an odd polygon");
  const double hs = metrics(PolygonSurface::with_side(p, 1.0)).height * std::sin(pi / p);
  return 2.0 * hs / (1.0 - hs);
}

inline bool is_vshape_skips(int p, const std::vector<int>& skips) {
  if (p % 2 == 0 || skips.size() != 4) return false;
  const int h = p / 2;
  const std::vector<int> pattern{h, h + 1, h + 1, h};
  for (std::size_t r = 0; r < 4; ++r)
    if (rotated(skips, r) == pattern) return true;
  return false;
}

/// Lower bound from a hit close to a vertex: the bisector of that vertex
/// passes at distance x from the hit, and arcs longer than 2 x csc(theta)
/// around the hit can be shortcut.
inline std::optional<double> converge_bound(const GeodesicPath& path) {
  const auto* s = path.polygon();
  if (s == nullptr || !path.closed()) return std::nullopt;
  std::optional<double> best;
  const int m = path.period();
  for (int i = 0; i < m; ++i) {
    const double u = path.hits()[static_cast<std::size_t>(i)].param;
    const double x = 2.0 * std::min(u, 1.0 - u) * s->apothem();
    const double sin_theta = std::sin(path.incidence_angle(i));
    if (x <= 0.0 || sin_theta <= 0.0) continue;
    const double reach = x / sin_theta;
    const double before = path.segment((i + m - 1) % m).length();
    const double after = path.segment(i).length();
    if (before <= reach || after <= reach) continue;
    const double bound = path.length() / (2.0 * reach);
    if (!best || bound > *best) best = bound;
  }
  return best;
}

inline MinindBounds analytic_bounds(const GeodesicPath& path) {
  if (!path.closed()) throw std::invalid_argument("bounds need a closed path");
  MinindBounds b;
  b.period_bound = path.period();
  if (const auto* s = path.polygon()) {
    if (is_vshape_skips(s->sides(), skip_numbers(path))) b.vshape_bound = vshape_bound(s->sides());
    b.converge_bound = converge_bound(path);
  }
  return b;
}

/// tol <= 0 selects 1e-7 L; k_cap <= 0 selects 4096.
inline MinindReport minimizing_index(const GeodesicPath& path, double tol = 0.0, int k_cap = 0, int samples = 0) {
  if (!path.closed()) throw std::invalid_argument("minimizing index needs a closed path");
  if (tol <= 0.0) tol = default_tolerance(path);
  if (k_cap <= 0) k_cap = 4096;
  if (k_cap < path.period()) throw std::invalid_argument("k_cap must be at least the period");
  MinindReport r;
  r.length = path.length();
  r.period = path.period();
  r.tolerance = tol;
  r.bounds = analytic_bounds(path);
  const ArcProfile prof = max_uniform_arc(path, tol, samples);
  r.s_max = prof.s_max;
  r.witness_t = prof.witness_t;
  const double L = r.length;
  int k = std::max(2, static_cast<int>(std::ceil(L / (prof.s_max + tol))));
  while (k > 2 && L / (k - 1) <= prof.s_max + tol) --k;
  while (L / k > prof.s_max + tol) ++k;
  if (k > k_cap) return r;
  r.minind = k;
  bool ok = true;
  for (double t : prof.samples)
    if (!is_minimizing_arc(path, t, L / k, tol)) {
      ok = false;
      break;
    }
  if (ok && k > 2) ok = !is_minimizing_arc(path, prof.witness_t, L / (k - 1), tol);
  r.verified = ok;
  return r;
}

struct SurfaceMinind {
  std::optional<int> minind;
  std::optional<GeodesicPath> witness;
  /// Number of closed geodesics whose index was computed.
  int examined{0};
  /// Human-readable description of the searched region.
  std::string region;
};

inline int smallest_prime_divisor(int n) {
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return d;
  return n;
}

/// Smallest minimizing index among the midpoint stars, the half geodesics
/// and the curves found by the search, all on X_n with inradius 1. An upper
/// estimate of minind(X_n) for the searched region.
inline SurfaceMinind minind_of_surface(int n, const SearchConfig& config = {}) {
  const auto s = PolygonSurface::with_inradius(n, 1.0);
  std::vector<GeodesicPath> candidates;
  if (n % 2 == 0) candidates.push_back(make_special(s, {SpecialKind::HalfGeodesic, 0}));
  const int d = smallest_prime_divisor(n);
  if (n % 2 != 0 && d < n) candidates.push_back(make_special(s, {SpecialKind::MidpointStar, n / d}));
  for (int k = 1; 2 * k < n; ++k) candidates.push_back(make_special(s, {SpecialKind::MidpointStar, k}));
  for (auto& e : find_closed_geodesics(s, config)) candidates.push_back(std::move(e.path));

  SurfaceMinind out;
  out.region = "midpoint stars, half geodesics, and midpoint-shooting search with period <= " +
               std::to_string(config.max_bounces) + " and length <= " +
               (std::isfinite(config.length_bound) ? std::to_string(config.length_bound) : std::string("inf"));
  for (const auto& c : candidates) {
    if (out.minind && c.period() >= *out.minind) continue;
    const MinindReport r = minimizing_index(c);
    ++out.examined;
    if (r.minind && (!out.minind || *r.minind < *out.minind)) {
      out.minind = r.minind;
      out.witness = c;
    }
  }
  if (!out.minind) throw std::runtime_error("search budget exhausted without a minimizing index");
  return out;
}

}  // namespace geokgon
