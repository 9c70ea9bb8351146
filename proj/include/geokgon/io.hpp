#pragma once

// JSON and CSV emitters, and parsers for the command-line value formats.

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "geokgon/asymptotics.hpp"
#include "geokgon/metric.hpp"
#include "geokgon/minind.hpp"
#include "geokgon/spectra.hpp"
#include "geokgon/surface.hpp"
#include "geokgon/tracer.hpp"

namespace geokgon {

using json = nlohmann::json;

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

inline int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
  return v;
}

inline std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& item : split(s, ',')) out.push_back(parse_int(item));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

/// ngon:N:side=S | ngon:N:inradius=R | disk:R
inline Surface parse_surface(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() == 2 && parts[0] == "disk") return DiskSurface(parse_double(parts[1]));
  if (parts.size() == 3 && parts[0] == "ngon") {
    const int n = parse_int(parts[1]);
    const auto kv = split(parts[2], '=');
    if (kv.size() == 2 && kv[0] == "side") return PolygonSurface::with_side(n, parse_double(kv[1]));
    if (kv.size() == 2 && kv[0] == "inradius") return PolygonSurface::with_inradius(n, parse_double(kv[1]));
  }
  throw std::invalid_argument("bad surface '" + spec + "'; expected ngon:N:side=S, ngon:N:inradius=R or disk:R");
}

/// E:U
inline EdgeLocation parse_edge_location(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 2) throw std::invalid_argument("bad edge location '" + s + "'; expected EDGE:U");
  return {parse_int(parts[0]), parse_double(parts[1])};
}

/// f:X,Y or b:X,Y
inline SurfacePoint parse_point(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() == 2) {
    const auto xy = split(parts[1], ',');
    if (xy.size() == 2 && (parts[0] == "f" || parts[0] == "b"))
      return {parts[0] == "f" ? Face::Front : Face::Back, {parse_double(xy[0]), parse_double(xy[1])}};
  }
  throw std::invalid_argument("bad point '" + s + "'; expected f:X,Y or b:X,Y");
}

/// N:L:K1,K2,...
inline SkipFamily parse_family(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw std::invalid_argument("bad family '" + s + "'; expected N:L:K1,K2,...");
  SkipFamily f{parse_int(parts[0]), parse_int(parts[1]), parse_int_list(parts[2])};
  f.validate();
  return f;
}

inline json to_json(const Surface& s) {
  if (const auto* p = std::get_if<PolygonSurface>(&s))
    return {{"kind", "ngon"}, {"n", p->sides()}, {"side", p->side_length()}};
  return {{"kind", "disk"}, {"radius", std::get<DiskSurface>(s).radius()}};
}

inline Surface surface_from_json(const json& j) {
  const std::string kind = j.at("kind");
  if (kind == "ngon") return PolygonSurface::with_side(j.at("n").get<int>(), j.at("side").get<double>());
  if (kind == "disk") return DiskSurface(j.at("radius").get<double>());
  throw std::invalid_argument("unknown surface kind '" + kind + "'");
}

inline json hit_json(const GeodesicPath& p, const BoundaryHit& h) {
  if (p.polygon() != nullptr) return {{"edge", h.edge}, {"u", h.param}};
  return {{"angle", h.param}};
}

inline json to_json(const GeodesicPath& p) {
  json segs = json::array();
  for (int i = 0; i < p.segment_count(); ++i) {
    const auto seg = p.segment(i);
    segs.push_back({{"face", to_string(seg.face)}, {"start", hit_json(p, seg.start)}, {"end", hit_json(p, seg.end)}});
  }
  json j{{"surface", to_json(p.surface())}, {"closed", p.closed()}, {"segments", segs}};
  if (p.polygon() != nullptr) {
    j["skips"] = skip_numbers(p);
    j["vertex_ratios"] = vertex_ratios(p);
  } else {
    j["skips"] = json::array();
    j["vertex_ratios"] = json::array();
  }
  j["length"] = p.length();
  j["period"] = p.period();
  j["start_angle"] = p.start_angle();
  j["status"] = p.status() == TraceStatus::Ok ? "ok" : "vertex-collision";
  return j;
}

/// Rebuilds a path from its JSON form. A path marked closed must end where
/// it starts.
inline GeodesicPath path_from_json(const json& j) {
  const Surface surface = surface_from_json(j.at("surface"));
  const auto& segs = j.at("segments");
  if (!segs.is_array() || segs.empty()) throw std::invalid_argument("path has no segments");
  std::vector<BoundaryHit> hits;
  auto hit = [&](const json& h) {
    if (const auto* p = std::get_if<PolygonSurface>(&surface)) {
      const EdgeLocation loc{h.at("edge").get<int>(), h.at("u").get<double>()};
      return BoundaryHit{edge_point(*p, loc).position, loc.edge, loc.u};
    }
    const double a = h.at("angle").get<double>();
    return BoundaryHit{std::get<DiskSurface>(surface).boundary_point(a), -1, a};
  };
  for (const auto& s : segs) hits.push_back(hit(s.at("start")));
  hits.push_back(hit(segs.back().at("end")));
  const bool closed = j.value("closed", false);
  const double scale = scale_of(surface);
  if (closed) {
    if (segs.size() % 2 != 0 || dist(hits.front().position, hits.back().position) > 1e-9 * scale)
      throw std::invalid_argument("path marked closed does not close up");
    hits.back() = hits.front();
  }
  GeodesicPath path(surface, std::move(hits));
  path.set_closed(closed);
  path.set_start_angle(j.value("start_angle", 0.0));
  if (j.value("status", std::string("ok")) != "ok") path.set_status(TraceStatus::VertexCollision);
  return path;
}

inline json to_json(const SurfacePoint& p) {
  return {{"face", to_string(p.face)}, {"x", p.position.x}, {"y", p.position.y}};
}

inline json to_json(const DistanceResult& r) {
  json w = json::array();
  for (const auto& p : r.witness) w.push_back(to_json(p));
  return {{"distance", r.distance},
          {"depth", r.depth},
          {"proven_optimal", r.proven_optimal},
          {"vertex_grazing", r.vertex_grazing},
          {"chain", r.chain.edges},
          {"witness", w}};
}

inline json to_json(const MinindBounds& b) {
  json j{{"period_bound", b.period_bound}};
  j["vshape_bound"] = b.vshape_bound ? json(*b.vshape_bound) : json(nullptr);
  j["converge_bound"] = b.converge_bound ? json(*b.converge_bound) : json(nullptr);
  return j;
}

inline json to_json(const MinindReport& r) {
  return {{"minind", r.minind ? json(*r.minind) : json(nullptr)},
          {"length", r.length},
          {"period", r.period},
          {"s_max", r.s_max},
          {"witness_t", r.witness_t},
          {"tolerance", r.tolerance},
          {"verified", r.verified},
          {"bounds", to_json(r.bounds)}};
}

inline json to_json(const SpectrumEntry& e) {
  return {{"length", e.length},
          {"period", e.period},
          {"skips", e.skips},
          {"multiplicity", e.multiplicity},
          {"start_angle", e.path.start_angle()},
          {"path", to_json(e.path)}};
}

inline json to_json(const LimitProfile& p, const LimitChecks& c) {
  json v = json::array();
  for (const auto& r : p.v_star) v.push_back(to_string(r));
  return {{"n", p.family.n},
          {"l", p.family.l},
          {"d", to_string(p.family.d())},
          {"k", p.family.k},
          {"v_star", v},
          {"touches_vertex", p.touches_vertex},
          {"realizable", p.realizable},
          {"closes", p.closes},
          {"three_term", c.three_term},
          {"arithmetic_mod1", c.arithmetic_mod1},
          {"periodicity", to_string(c.periodicity)},
          {"t", c.t}};
}

/// Shortest round-trip decimal form of a double.
inline std::string format_number(double v) {
  char buf[32];
  for (int prec = 6; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::stod(buf) == v) break;
  }
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += csv_field(fields[i]);
  }
  return out + "\n";
}

inline std::string surface_label(const Surface& s) {
  if (const auto* p = std::get_if<PolygonSurface>(&s))
    return "ngon:" + std::to_string(p->sides()) + ":side=" + format_number(p->side_length());
  return "disk:" + format_number(std::get<DiskSurface>(s).radius());
}

}  // namespace geokgon
