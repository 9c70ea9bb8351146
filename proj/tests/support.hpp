#pragma once

#include <random>

#include "geokgon/surface.hpp"

namespace testing_support {

// Uniform point on a random face; one draw in eight lands on the boundary.
inline geokgon::SurfacePoint random_point(const geokgon::Surface& s, std::mt19937_64& rng) {
  using namespace geokgon;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Face face = (rng() & 1) ? Face::Front : Face::Back;
  if (const auto* p = std::get_if<PolygonSurface>(&s)) {
    if (rng() % 8 == 0) {
      const int e = static_cast<int>(rng() % static_cast<unsigned>(p->sides()));
      return {Face::Front, edge_point(*p, {e, 0.01 + 0.98 * unit(rng)}).position};
    }
    const double r = p->circumradius();
    for (;;) {
      const Vec2 x{(2.0 * unit(rng) - 1.0) * r, (2.0 * unit(rng) - 1.0) * r};
      if (p->contains(x, 0.0)) return {face, x};
    }
  }
  const double r = std::get<DiskSurface>(s).radius();
  if (rng() % 8 == 0) return {Face::Front, from_angle(2.0 * pi * unit(rng)) * r};
  for (;;) {
    const Vec2 x{(2.0 * unit(rng) - 1.0) * r, (2.0 * unit(rng) - 1.0) * r};
    if (norm(x) < r) return {face, x};
  }
}

}  // namespace testing_support
