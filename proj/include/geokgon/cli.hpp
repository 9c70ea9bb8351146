#pragma once

// The geokgon command line. run() is separate from main() so it can be
// driven from tests.
//
// Exit codes: 0 success, 1 usage error, 2 numerical failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geokgon/asymptotics.hpp"
#include "geokgon/io.hpp"
#include "geokgon/metric.hpp"
#include "geokgon/minind.hpp"
#include "geokgon/spectra.hpp"
#include "geokgon/svg.hpp"
#include "geokgon/tracer.hpp"

namespace geokgon::cli {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// vshape | overunder | star:K | half:I | chord:M:Q:T (disk) | @file
inline GeodesicPath parse_geodesic(const Surface& surface, const std::string& spec) {
  if (!spec.empty() && spec[0] == '@') {
    std::ifstream in(spec.substr(1));
    if (!in) throw UsageError("cannot read '" + spec.substr(1) + "'");
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw UsageError(std::string("bad geodesic file: ") + e.what());
    }
    if (j.contains("path")) j = j["path"];
    return path_from_json(j);
  }
  const auto parts = split(spec, ':');
  if (const auto* disk = std::get_if<DiskSurface>(&surface)) {
    if (parts.size() == 4 && parts[0] == "chord")
      return make_disk_geodesic(*disk, parse_int(parts[1]), parse_int(parts[2]), parse_int(parts[3]));
    throw UsageError("disk geodesics are given as chord:M:Q:T");
  }
  const auto& poly = std::get<PolygonSurface>(surface);
  if (spec == "vshape") return make_special(poly, {SpecialKind::VShape, 0});
  if (spec == "overunder") return make_special(poly, {SpecialKind::OverUnder, 0});
  if (parts.size() == 2 && parts[0] == "star") return make_special(poly, {SpecialKind::MidpointStar, parse_int(parts[1])});
  if (parts.size() == 2 && parts[0] == "half")
    return make_special(poly, {SpecialKind::HalfGeodesic, parse_int(parts[1])});
  throw UsageError("unknown geodesic '" + spec + "'");
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed geodesics and minimizing indices on doubled regular polygons and the doubled disk"};
  app.name("geokgon");
  app.require_subcommand(1);
  app.fallthrough();

  std::string surface_spec = "ngon:3:inradius=1";
  double tol = 0.0;
  bool as_json = false, as_csv = false;
  std::string out_path;
  app.add_option("--surface", surface_spec, "ngon:N:side=S | ngon:N:inradius=R | disk:R");
  app.add_option("--tol", tol, "Absolute tolerance (defaults depend on the command)");
  auto* json_flag = app.add_flag("--json", as_json, "Emit JSON");
  app.add_flag("--csv", as_csv, "Emit CSV")->excludes(json_flag);
  app.add_option("--out", out_path, "Write output to this file");

  std::string start = "0:0.5", geodesic_spec, a_spec, b_spec, ns_spec, family_spec, kind_spec = "polygon";
  double angle = 0.0, max_length = std::numeric_limits<double>::infinity();
  int bounces = 64, depth = 0, samples = 0, kcap = 0, grid = 10000, diam_grid = 32;
  bool inscribed = false;

  auto* trace_cmd = app.add_subcommand("trace", "Trace a geodesic from an edge point");
  trace_cmd->add_option("--start", start, "EDGE:U start point")->capture_default_str();
  trace_cmd->add_option("--angle", angle, "Start angle in radians from the edge's counterclockwise direction")->required();
  trace_cmd->add_option("--bounces", bounces, "Maximum number of segments")->capture_default_str();

  auto* geo_cmd = app.add_subcommand("geodesic", "Construct a named closed geodesic");
  geo_cmd->add_option("--geodesic", geodesic_spec, "vshape | overunder | star:K | half:I | chord:M:Q:T | @file")
      ->required();

  auto* dist_cmd = app.add_subcommand("distance", "Geodesic distance between two points");
  dist_cmd->add_option("--a", a_spec, "f:X,Y or b:X,Y")->required();
  dist_cmd->add_option("--b", b_spec, "f:X,Y or b:X,Y")->required();
  dist_cmd->add_option("--depth", depth, "Maximum edge crossings (default 2n)");

  auto* minind_cmd = app.add_subcommand("minind", "Minimizing index of a closed geodesic");
  minind_cmd->add_option("--geodesic", geodesic_spec, "vshape | overunder | star:K | half:I | chord:M:Q:T | @file")
      ->required();
  minind_cmd->add_option("--samples", samples, "Uniform arc start samples (default 8 per segment)");
  minind_cmd->add_option("--kcap", kcap, "Largest k tried");

  auto* search_cmd = app.add_subcommand("search", "Search for closed geodesics through an edge midpoint");
  auto* shortest_cmd = app.add_subcommand("shortest", "Shortest closed geodesic found by the search");
  for (auto* c : {search_cmd, shortest_cmd}) {
    c->add_option("--bounces", bounces, "Maximum period")->capture_default_str();
    c->add_option("--max-length", max_length, "Length bound");
    c->add_option("--grid", grid, "Angle grid size")->capture_default_str();
  }

  auto* ratios_cmd = app.add_subcommand("ratios", "Shortest length against diameter and area");
  ratios_cmd->add_option("--n", ns_spec, "Comma-separated odd side counts")->required();
  ratios_cmd->add_option("--diam-grid", diam_grid, "Diameter grid resolution")->capture_default_str();

  auto* limits_cmd = app.add_subcommand("limits", "Exact vertex-ratio limits of a skip family");
  limits_cmd->add_option("--family", family_spec, "N:L:K1,K2,... (period, winding, deviations)")->required();

  auto* diverge_cmd = app.add_subcommand("diverge", "V-shape minimizing-index bounds against n");
  ns_spec = "";
  diverge_cmd->add_option("--n", ns_spec, "Comma-separated odd side counts");

  auto* figure_cmd = app.add_subcommand("figure", "Render an SVG figure");
  figure_cmd->add_option("--kind", kind_spec, "polygon | disk | development | convergence")->capture_default_str();
  figure_cmd->add_option("--geodesic", geodesic_spec, "Geodesic to draw (omit for the outline only)");
  figure_cmd->add_option("--n", ns_spec, "Side counts for convergence figures");
  figure_cmd->add_flag("--inscribed", inscribed, "Draw the inscribed circle");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "geokgon: " << e.what() << "\n" << app.help();
    return 1;
  }

  std::ostringstream buffer;
  auto emit_json = [&](const json& j) { buffer << j.dump(2) << "\n"; };
  int code = 0;
  try {
    const Surface surface = parse_surface(surface_spec);
    auto polygon = [&]() -> const PolygonSurface& {
      if (const auto* p = std::get_if<PolygonSurface>(&surface)) return *p;
      throw UsageError("this command needs a polygon surface");
    };

    if (trace_cmd->parsed()) {
      // Angles typed on a command line carry about 7 digits.
      TraceOptions opt;
      opt.closure_position = opt.closure_direction = tol > 0.0 ? tol : 1e-6;
      const GeodesicPath p = trace(polygon(), parse_edge_location(start), angle, bounces, opt);
      emit_json(to_json(p));
      if (p.status() != TraceStatus::Ok) {
        err << "geokgon: trace passed through a vertex\n";
        code = 2;
      }
    } else if (geo_cmd->parsed()) {
      emit_json(to_json(parse_geodesic(surface, geodesic_spec)));
    } else if (dist_cmd->parsed()) {
      const DistanceResult r = distance(surface, parse_point(a_spec), parse_point(b_spec), depth);
      emit_json(to_json(r));
      if (!r.proven_optimal) {
        err << "geokgon: depth cap reached; distance not proven optimal\n";
        code = 2;
      }
    } else if (minind_cmd->parsed()) {
      const GeodesicPath p = parse_geodesic(surface, geodesic_spec);
      const MinindReport r = minimizing_index(p, tol, kcap, samples);
      if (as_csv) {
        buffer << csv_row({"surface", "period", "length", "s_max", "minind", "period_bound", "vshape_bound",
                           "converge_bound", "verified"});
        auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
        buffer << csv_row({surface_label(p.surface()), std::to_string(r.period), format_number(r.length),
                           format_number(r.s_max), r.minind ? std::to_string(*r.minind) : std::string(),
                           std::to_string(r.bounds.period_bound), opt(r.bounds.vshape_bound),
                           opt(r.bounds.converge_bound), r.verified ? "true" : "false"});
      } else {
        emit_json(to_json(r));
      }
      if (!r.verified && r.minind) {
        err << "geokgon: minimizing index failed re-verification\n";
        code = 2;
      }
    } else if (search_cmd->parsed() || shortest_cmd->parsed()) {
      SearchConfig cfg;
      cfg.max_bounces = bounces;
      cfg.length_bound = max_length;
      cfg.angle_grid = grid;
      if (tol > 0.0) cfg.closure_tolerance = tol;
      if (search_cmd->parsed()) {
        const auto entries = find_closed_geodesics(polygon(), cfg);
        if (as_csv) {
          buffer << csv_row({"length", "period", "skips", "multiplicity", "start_angle"});
          for (const auto& e : entries) {
            std::string skips;
            for (std::size_t i = 0; i < e.skips.size(); ++i) skips += (i ? " " : "") + std::to_string(e.skips[i]);
            buffer << csv_row({format_number(e.length), std::to_string(e.period), skips,
                               std::to_string(e.multiplicity), format_number(e.path.start_angle())});
          }
        } else {
          json j = json::array();
          for (const auto& e : entries) j.push_back(to_json(e));
          emit_json(j);
        }
      } else {
        const ShortestResult r = shortest_closed_geodesic(polygon(), cfg);
        json j = to_json(r.entry);
        j["unique"] = r.unique;
        emit_json(j);
      }
    } else if (ratios_cmd->parsed()) {
      const auto rows = ratio_table(parse_int_list(ns_spec), diam_grid);
      if (as_json) {
        json j = json::array();
        for (const auto& r : rows)
          j.push_back({{"n", r.n == 0 ? json("disk") : json(r.n)},
                       {"L", r.length},
                       {"diam", r.diameter},
                       {"doubled_area", r.doubled_area},
                       {"L_over_diam", r.length_over_diameter},
                       {"L_over_sqrt_area", r.length_over_sqrt_area}});
        emit_json(j);
      } else {
        buffer << csv_row({"n", "L", "diam", "doubled_area", "L/diam", "L/sqrt_area"});
        for (const auto& r : rows)
          buffer << csv_row({r.n == 0 ? "disk" : std::to_string(r.n), format_number(r.length),
                             format_number(r.diameter), format_number(r.doubled_area),
                             format_number(r.length_over_diameter), format_number(r.length_over_sqrt_area)});
      }
    } else if (limits_cmd->parsed()) {
      const LimitProfile prof = vertex_ratio_limits(parse_family(family_spec));
      const LimitChecks checks = check_limit_identities(prof);
      if (as_csv) {
        buffer << csv_row({"i", "k", "v_star"});
        for (std::size_t i = 0; i < prof.v_star.size(); ++i)
          buffer << csv_row({std::to_string(i), std::to_string(prof.family.k[i]), to_string(prof.v_star[i])});
      } else {
        emit_json(to_json(prof, checks));
      }
    } else if (diverge_cmd->parsed()) {
      const std::vector<int> ns = ns_spec.empty() ? std::vector<int>{3, 5, 7, 9, 11, 15, 21, 31, 51, 101, 201}
                                                  : parse_int_list(ns_spec);
      const auto rows = divergence_experiment(ns);
      if (as_json) {
        json j = json::array();
        for (const auto& r : rows)
          j.push_back({{"n", r.n == 0 ? json("disk") : json(r.n)},
                       {"vshape_length", r.vshape_length},
                       {"bound", r.bound},
                       {"measured_minind", r.measured_minind ? json(*r.measured_minind) : json(nullptr)}});
        emit_json(j);
      } else {
        buffer << csv_row({"n", "vshape_length", "bound", "measured_minind"});
        for (const auto& r : rows)
          buffer << csv_row({r.n == 0 ? "disk" : std::to_string(r.n), format_number(r.vshape_length),
                             format_number(r.bound), r.measured_minind ? std::to_string(*r.measured_minind) : ""});
      }
    } else if (figure_cmd->parsed()) {
      if (out_path.empty()) throw UsageError("figure needs --out");
      RenderSpec spec;
      spec.kind = parse_figure_kind(kind_spec);
      spec.output = out_path;
      spec.inscribed_circle = inscribed;
      std::vector<FigurePanel> panels;
      if (spec.kind == FigureKind::ConvergenceSequence) {
        const std::vector<int> ns = ns_spec.empty() ? std::vector<int>{3, 7, 11, 15} : parse_int_list(ns_spec);
        const std::string g = geodesic_spec.empty() ? "vshape" : geodesic_spec;
        for (int n : ns) {
          const Surface s = PolygonSurface::with_inradius(n, 1.0);
          panels.push_back({s, parse_geodesic(s, g)});
        }
      } else {
        std::optional<GeodesicPath> p;
        if (!geodesic_spec.empty()) p = parse_geodesic(surface, geodesic_spec);
        panels.push_back({p ? p->surface() : surface, p});
      }
      try {
        write_svg(spec, panels);
      } catch (const std::runtime_error& e) {
        err << "geokgon: " << e.what() << "\n";
        return 1;
      }
      return 0;
    }
  } catch (const UsageError& e) {
    err << "geokgon: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "geokgon: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    err << "geokgon: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    err << "geokgon: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "geokgon: numerical failure: " << e.what() << "\n";
    return 2;
  }

  if (out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f || !(f << buffer.str())) {
      err << "geokgon: cannot write '" << out_path << "'\n";
      return 1;
    }
  }
  return code;
}

}  // namespace geokgon::cli
