#pragma once

// Skip families, vertex-ratio recurrences and their limits as the polygon
// side count p grows.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "geokgon/minind.hpp"
#include "geokgon/tracer.hpp"

namespace geokgon {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Fractional part in [0, 1).
inline Rational frac(const Rational& r) {
  const std::int64_t q = r.numerator() / r.denominator();
  Rational f = r - Rational(q);
  if (f < Rational(0)) f += Rational(1);
  return f;
}

/// Inclination of the start edge against the closing direction of a
/// geodesic with the given skips on X_p, in (0, pi).
inline double development_angle(int p, const std::vector<int>& skips) {
  if (p < 3) throw std::invalid_argument("polygon needs at least 3 sides");
  const auto partials = alternating_partials(skips);
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < partials.size(); ++i) {
    const long long reduced = ((partials[i] % p) + p) % p;
    const double a = 2.0 * pi * static_cast<double>(reduced) / p;
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    sx += sign * std::cos(a);
    sy += sign * std::sin(a);
  }
  if (std::hypot(sx, sy) < 1e-12) throw std::domain_error("degenerate skip family: zero resultant");
  double theta = std::atan2(sy, sx) + pi / 2.0;
  theta = std::fmod(theta, pi);
  if (theta <= 0.0) theta += pi;
  return theta;
}

/// Next vertex ratio for a segment with skip s leaving a hit with ratio v at
/// angle theta (side length 1, polygon side count p).
inline double vertex_ratio_step(int p, double v, int s, double theta) {
  if (!(v > 0.0 && v < 1.0)) throw std::domain_error("vertex ratio must lie in (0,1)");
  const double a = pi * (static_cast<double>(s) / p);
  const double a1 = pi * (static_cast<double>(s - 1) / p);
  const double next = ((1.0 - v) * std::sin(theta) - std::sin(a1) * std::sin(a - theta) / std::sin(pi / p)) /
                      std::sin(2.0 * a - theta);
  if (!(next > 0.0 && next < 1.0)) throw std::domain_error("inconsistent (v, s, theta): segment misses the edge");
  return next;
}

/// Angle at the next hit for a segment with skip s leaving at angle theta.
inline double next_angle(int p, int s, double theta) { return 2.0 * pi * (static_cast<double>(s) / p) - theta; }

/// Iterates the recurrence along the skips: returns v_0 .. v_m.
inline std::vector<double> iterate_vertex_ratios(int p, const std::vector<int>& skips, double theta, double v0 = 0.5) {
  std::vector<double> out{v0};
  for (int s : skips) {
    out.push_back(vertex_ratio_step(p, out.back(), s, theta));
    theta = next_angle(p, s, theta);
  }
  return out;
}

/// Skips s_i(p) = (p + k_i) l / n for a period-n family with d = n / l.
struct SkipFamily {
  int n{0};
  int l{1};
  std::vector<int> k;

  Rational d() const { return Rational(n, l); }

  void validate() const {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("family period must be even");
    if (l < 1) throw std::invalid_argument("winding must be positive");
    if (static_cast<int>(k.size()) != n) throw std::invalid_argument("need one deviation per segment");
    if (std::accumulate(k.begin(), k.end(), 0LL) != 0) throw std::invalid_argument("deviations must sum to zero");
  }

  bool palindromic() const { return is_palindrome(k); }

  bool admissible(int p) const {
    for (int ki : k)
      if ((static_cast<long long>(p + ki) * l) % n != 0) return false;
    return true;
  }

  std::vector<int> instantiate(int p) const {
    if (!admissible(p)) throw std::invalid_argument("p is not admissible for this family");
    std::vector<int> s;
    for (int ki : k) s.push_back(static_cast<int>(static_cast<long long>(p + ki) * l / n));
    return s;
  }
};

struct LimitProfile {
  SkipFamily family;
  /// v*_0 .. v*_{n-1}; the sequence is n-periodic.
  std::vector<Rational> v_star;
  /// Some v*_i equals 0 or 1.
  bool touches_vertex{false};
  /// Every v*_i lies in [0, 1]; otherwise no geodesic family has these limits.
  bool realizable{false};
  /// Iterating one full period returns to 1/2.
  bool closes{false};

  Rational at(long long i) const {
    const auto n = static_cast<long long>(v_star.size());
    return v_star[static_cast<std::size_t>(((i % n) + n) % n)];
  }
};

/// Exact limits of the vertex ratios along a palindromic family started at
/// an edge midpoint.
inline LimitProfile vertex_ratio_limits(const SkipFamily& f) {
  f.validate();
  if (!f.palindromic()) throw std::invalid_argument("family must be palindromic; canonicalize first");
  const int n = f.n;
  const Rational d = f.d();
  auto k = [&](long long i) { return f.k[static_cast<std::size_t>((((i - 1) % n) + n) % n)]; };
  LimitProfile prof;
  prof.family = f;
  Rational v(1, 2);
  std::vector<Rational> seq{v};
  for (int i = 0; i < n; ++i) {
    std::int64_t acc = 0;
    for (int j = 1; j <= n; ++j) acc += ((j % 2 == 1) ? 1 : -1) * static_cast<std::int64_t>(n - j + 1) * k(j + i);
    v = Rational(1) - v - Rational(k(i + 1)) / d + Rational(2 * acc) / (d * Rational(n));
    seq.push_back(v);
  }
  prof.closes = seq.back() == Rational(1, 2);
  seq.pop_back();
  prof.v_star = seq;
  prof.realizable = std::all_of(seq.begin(), seq.end(),
                                [](const Rational& r) { return r >= Rational(0) && r <= Rational(1); });
  prof.touches_vertex = std::any_of(seq.begin(), seq.end(), [](const Rational& r) { return r == Rational(0) || r == Rational(1); });
  return prof;
}

enum class PeriodicityStatus { Holds, Fails, NotApplicable };

inline const char* to_string(PeriodicityStatus s) {
  switch (s) {
    case PeriodicityStatus::Holds: return "holds";
    case PeriodicityStatus::Fails: return "fails";
    default: return "not-applicable";
  }
}

struct LimitChecks {
  bool three_term{false};
  bool arithmetic_mod1{false};
  PeriodicityStatus periodicity{PeriodicityStatus::NotApplicable};
  /// Spacing of the 1/2 occurrences when they are evenly spaced.
  int t{0};
};

inline LimitChecks check_limit_identities(const LimitProfile& prof) {
  const int n = static_cast<int>(prof.v_star.size());
  const auto& f = prof.family;
  const Rational d = f.d();
  auto k = [&](long long i) { return f.k[static_cast<std::size_t>((((i - 1) % n) + n) % n)]; };
  LimitChecks c;
  c.three_term = true;
  for (int i = 0; i < n; ++i) {
    const Rational lhs = prof.at(i - 1) + prof.at(i + 1);
    const Rational rhs = Rational(2) * (Rational(1) - prof.at(i)) + Rational(k(i) - k(i + 1)) / d;
    if (lhs != rhs) c.three_term = false;
  }
  c.arithmetic_mod1 = true;
  for (int parity = 0; parity < 2; ++parity) {
    const Rational step = frac(prof.at(parity + 2) - prof.at(parity));
    for (int i = parity; i < parity + n; i += 2)
      if (frac(prof.at(i + 2) - prof.at(i)) != step) c.arithmetic_mod1 = false;
  }
  if (prof.touches_vertex) return c;
  std::vector<int> halves;
  for (int i = 0; i < n; ++i)
    if (prof.at(i) == Rational(1, 2)) halves.push_back(i);
  const int t = halves.size() > 1 ? halves[1] - halves[0] : n;
  bool even_spacing = true;
  for (std::size_t i = 0; i < halves.size(); ++i) {
    const int next = i + 1 < halves.size() ? halves[i + 1] : halves[0] + n;
    if (next - halves[i] != t) even_spacing = false;
  }
  c.t = even_spacing ? t : 0;
  c.periodicity = (even_spacing && t % 2 == 1 && n % t == 0) ? PeriodicityStatus::Holds : PeriodicityStatus::Fails;
  return c;
}

/// Some prime p admits the family: all k_i agree modulo n / gcd(n, l) and the
/// common residue is coprime to it.
inline bool prime_compatible(const SkipFamily& f) {
  const int m = f.n / std::gcd(f.n, f.l);
  const int r = ((-f.k[0]) % m + m) % m;
  for (int ki : f.k)
    if (((ki % m) + m) % m != ((f.k[0] % m) + m) % m) return false;
  return m == 1 || std::gcd(r, m) == 1;
}

/// Palindromic families with period n, d = n / l an integer >= 2, and
/// consecutive deviations differing by 0 or +-d (so skips differ by at most
/// one), first deviation in [-bound, bound].
inline std::vector<SkipFamily> enumerate_families(int n, int l, int bound) {
  std::vector<SkipFamily> out;
  if (n % l != 0 || n / l < 2) return out;
  const int d = n / l;
  std::vector<int> k(static_cast<std::size_t>(n));
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      // Wrap-around step.
      const int diff = k[0] - k[static_cast<std::size_t>(n - 1)];
      if (diff != 0 && diff != d && diff != -d) return;
      SkipFamily f{n, l, k};
      if (f.palindromic() && std::accumulate(k.begin(), k.end(), 0) == 0) out.push_back(f);
      return;
    }
    for (int step : {-d, 0, d}) {
      k[static_cast<std::size_t>(i)] = k[static_cast<std::size_t>(i - 1)] + step;
      self(self, i + 1);
    }
  };
  for (int k0 = -bound; k0 <= bound; ++k0) {
    k[0] = k0;
    rec(rec, 1);
  }
  return out;
}

struct InteriorExperiment {
  int families{0};
  /// Families whose limits all lie in [0, 1].
  int realizable{0};
  /// Profiles with every limit strictly inside (0, 1).
  int interior{0};
  /// Interior profiles that some prime p admits.
  int prime_interior{0};
  /// Every profile satisfied the three-term and mod-1 identities.
  bool identities_hold{true};
  /// Every interior profile had odd 1/2-spacing t dividing n.
  bool periodicity_holds{true};
};

inline InteriorExperiment interior_profile_experiment(const std::vector<int>& periods, int bound) {
  InteriorExperiment e;
  for (int n : periods)
    for (int l = 1; l < n; ++l)
      for (const SkipFamily& f : enumerate_families(n, l, bound)) {
        ++e.families;
        const LimitProfile prof = vertex_ratio_limits(f);
        const LimitChecks c = check_limit_identities(prof);
        if (!c.three_term || !c.arithmetic_mod1) e.identities_hold = false;
        if (!prof.realizable) continue;
        ++e.realizable;
        if (!prof.touches_vertex) {
          ++e.interior;
          if (prime_compatible(f)) ++e.prime_interior;
          if (c.periodicity != PeriodicityStatus::Holds) e.periodicity_holds = false;
        }
      }
  return e;
}

struct ConvergenceResult {
  bool converges{false};
  double c{0.0};
  bool mixed_periods{false};
  double max_deviation{0.0};
};

/// Whether closed geodesics on X_{n_i} (increasing n_i) have skips
/// s_ij = c n_i + O(1) with a common c > 0.
inline ConvergenceResult detect_convergence(const std::vector<GeodesicPath>& paths) {
  ConvergenceResult r;
  if (paths.empty()) throw std::invalid_argument("need at least one path");
  const int period = paths.front().period();
  std::optional<long long> winding;
  bool same_winding = true;
  for (const auto& p : paths) {
    if (!p.closed() || p.polygon() == nullptr) throw std::invalid_argument("need closed polygon geodesics");
    if (p.period() != period) r.mixed_periods = true;
  }
  const auto& last = paths.back();
  const auto last_skips = skip_numbers(last);
  r.c = static_cast<double>(std::accumulate(last_skips.begin(), last_skips.end(), 0LL)) /
        (static_cast<double>(last.period()) * last.polygon()->sides());
  if (r.mixed_periods) return r;
  for (const auto& p : paths) {
    const auto s = skip_numbers(p);
    const int n = p.polygon()->sides();
    const long long total = std::accumulate(s.begin(), s.end(), 0LL);
    const long long l = total / n;
    if (winding && *winding != l) same_winding = false;
    winding = l;
  }
  if (!same_winding || !winding || *winding <= 0) return r;
  r.c = static_cast<double>(*winding) / period;
  for (const auto& p : paths) {
    const int n = p.polygon()->sides();
    for (int s : skip_numbers(p)) r.max_deviation = std::max(r.max_deviation, std::abs(s - r.c * n));
  }
  r.converges = r.max_deviation <= period;
  return r;
}

struct DivergenceRow {
  int n{0};  // 0 marks the disk limit row
  double vshape_length{0.0};
  double bound{0.0};
  std::optional<int> measured_minind;
};

/// Evidence that V-shape minimizing indices diverge: per odd n, the V-shape
/// length (inradius 1), its analytic bound, and the measured index for n <= 7.
/// The last row is the doubly traversed diameter of the unit disk.
inline std::vector<DivergenceRow> divergence_experiment(const std::vector<int>& ns) {
  std::vector<DivergenceRow> rows;
  for (int n : ns) {
    const auto s = PolygonSurface::with_inradius(n, 1.0);
    const GeodesicPath v = make_special(s, {SpecialKind::VShape, 0});
    DivergenceRow row{n, v.length(), vshape_bound(n), std::nullopt};
    if (n <= 7) row.measured_minind = minimizing_index(v).minind;
    rows.push_back(row);
  }
  const GeodesicPath diam = make_disk_geodesic(DiskSurface(1.0), 2, 1, 2);
  rows.push_back({0, diam.length(), 4.0, minimizing_index(diam).minind});
  return rows;
}

}  // namespace geokgon
