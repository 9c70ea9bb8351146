#pragma once

// Deterministic SVG figures: front-face segments solid, back-face dashed.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "geokgon/geometry.hpp"
#include "geokgon/surface.hpp"
#include "geokgon/tracer.hpp"

namespace geokgon {

enum class FigureKind { Polygon, Disk, Development, ConvergenceSequence };

inline FigureKind parse_figure_kind(const std::string& s) {
  if (s == "polygon") return FigureKind::Polygon;
  if (s == "disk") return FigureKind::Disk;
  if (s == "development") return FigureKind::Development;
  if (s == "convergence") return FigureKind::ConvergenceSequence;
  throw std::invalid_argument("unknown figure kind '" + s + "'");
}

struct RenderSpec {
  FigureKind kind{FigureKind::Polygon};
  std::string output;
  double stroke_width{1.5};
  int panel_size{240};
  bool inscribed_circle{false};
  bool hit_markers{true};
};

struct FigurePanel {
  Surface surface;
  std::optional<GeodesicPath> path;
};

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

class Canvas {
 public:
  Canvas(double ox, double oy, double scale, Vec2 center) : ox_(ox), oy_(oy), scale_(scale), center_(center) {}

  Vec2 map(Vec2 p) const { return {ox_ + (p.x - center_.x) * scale_, oy_ - (p.y - center_.y) * scale_}; }

  std::string polygon(const std::vector<Vec2>& pts, const std::string& style) const {
    std::string s = "<polygon points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Vec2 q = map(pts[i]);
      if (i > 0) s += ' ';
      s += fmt(q.x) + "," + fmt(q.y);
    }
    return s + "\" " + style + "/>\n";
  }

  std::string circle(Vec2 c, double r, const std::string& style) const {
    const Vec2 q = map(c);
    return "<circle cx=\"" + fmt(q.x) + "\" cy=\"" + fmt(q.y) + "\" r=\"" + fmt(r * scale_) + "\" " + style + "/>\n";
  }

  std::string dot(Vec2 c, double r_px, const std::string& style) const {
    const Vec2 q = map(c);
    return "<circle cx=\"" + fmt(q.x) + "\" cy=\"" + fmt(q.y) + "\" r=\"" + fmt(r_px) + "\" " + style + "/>\n";
  }

  std::string line(Vec2 a, Vec2 b, const std::string& style) const {
    const Vec2 p = map(a), q = map(b);
    return "<line x1=\"" + fmt(p.x) + "\" y1=\"" + fmt(p.y) + "\" x2=\"" + fmt(q.x) + "\" y2=\"" + fmt(q.y) + "\" " +
           style + "/>\n";
  }

 private:
  double ox_, oy_, scale_;
  Vec2 center_;
};

inline std::string segment_style(Face f, double width) {
  std::string s = "stroke=\"#1f4e9a\" stroke-width=\"" + fmt(width) + "\" fill=\"none\"";
  if (f == Face::Back) s += " stroke-dasharray=\"6 4\"";
  return s;
}

inline std::string outline(const Canvas& c, const Surface& s, const std::string& style) {
  if (const auto* p = std::get_if<PolygonSurface>(&s)) return c.polygon(p->vertices(), style);
  return c.circle({0.0, 0.0}, std::get<DiskSurface>(s).radius(), style);
}

inline std::string surface_panel(const RenderSpec& spec, const FigurePanel& panel, double ox) {
  const double size = spec.panel_size;
  const double r = metrics(panel.surface).circumradius;
  const Canvas c(ox + size / 2.0, size / 2.0, (size / 2.0 - 12.0) / r, {0.0, 0.0});
  std::string out = outline(c, panel.surface, "stroke=\"#000000\" stroke-width=\"1.000\" fill=\"none\"");
  if (spec.inscribed_circle)
    out += c.circle({0.0, 0.0}, metrics(panel.surface).apothem,
                    "stroke=\"#999999\" stroke-width=\"0.750\" fill=\"none\"");
  if (!panel.path) return out;
  const GeodesicPath& g = *panel.path;
  for (int i = 0; i < g.segment_count(); ++i) {
    const auto seg = g.segment(i);
    out += c.line(seg.start.position, seg.end.position, segment_style(seg.face, spec.stroke_width));
  }
  if (spec.hit_markers)
    for (int i = 0; i < g.segment_count(); ++i)
      out += c.dot(g.hits()[static_cast<std::size_t>(i)].position, 2.0, "fill=\"#c0392b\"");
  return out;
}

inline std::string development_panel(const RenderSpec& spec, const FigurePanel& panel, double ox) {
  const auto* s = std::get_if<PolygonSurface>(&panel.surface);
  if (s == nullptr) throw std::invalid_argument("development figures need a polygon");
  std::vector<Isometry> copies{Isometry{}};
  if (panel.path) {
    const GeodesicPath& g = *panel.path;
    for (int i = 1; i < g.segment_count(); ++i) {
      const int e = g.hits()[static_cast<std::size_t>(i)].edge;
      const Isometry& t = copies.back();
      copies.push_back(Isometry::reflection(t.apply(s->vertex(e)), t.apply(s->vertex(e + 1))).compose(t));
    }
  }
  Vec2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Vec2 hi{-lo.x, -lo.y};
  for (const auto& t : copies)
    for (const Vec2& v : s->vertices()) {
      const Vec2 q = t.apply(v);
      lo = {std::min(lo.x, q.x), std::min(lo.y, q.y)};
      hi = {std::max(hi.x, q.x), std::max(hi.y, q.y)};
    }
  const double size = spec.panel_size;
  const double extent = std::max(hi.x - lo.x, hi.y - lo.y);
  const Canvas c(ox + size / 2.0, size / 2.0, (size - 24.0) / extent, (lo + hi) * 0.5);
  std::string out;
  for (const auto& t : copies) {
    std::vector<Vec2> pts;
    for (const Vec2& v : s->vertices()) pts.push_back(t.apply(v));
    out += c.polygon(pts, "stroke=\"#888888\" stroke-width=\"0.750\" fill=\"none\"");
  }
  if (!panel.path) return out;
  const GeodesicPath& g = *panel.path;
  for (int i = 0; i < g.segment_count(); ++i) {
    const auto seg = g.segment(i);
    const Isometry& t = copies[static_cast<std::size_t>(i)];
    out += c.line(t.apply(seg.start.position), t.apply(seg.end.position), segment_style(seg.face, spec.stroke_width));
  }
  return out;
}

}  // namespace detail

inline std::string render_svg(const RenderSpec& spec, const std::vector<FigurePanel>& panels) {
  const std::size_t count = std::max<std::size_t>(1, panels.size());
  const int width = spec.panel_size * static_cast<int>(count);
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
         std::to_string(spec.panel_size) + "\" viewBox=\"0 0 " + std::to_string(width) + " " +
         std::to_string(spec.panel_size) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const double ox = static_cast<double>(i) * spec.panel_size;
    out += "<g>\n";
    if (spec.kind == FigureKind::Development)
      out += detail::development_panel(spec, panels[i], ox);
    else
      out += detail::surface_panel(spec, panels[i], ox);
    out += "</g>\n";
  }
  return out + "</svg>\n";
}

inline void write_svg(const RenderSpec& spec, const std::vector<FigurePanel>& panels) {
  std::ofstream f(spec.output, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + spec.output + "'");
  f << render_svg(spec, panels);
  if (!f) throw std::runtime_error("cannot write '" + spec.output + "'");
}

}  // namespace geokgon
