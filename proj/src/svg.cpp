#include "tspcp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "tspcp/dubins.hpp"

namespace tspcp {

namespace {

std::string num(double v) {
  // Fixed formatting keeps output byte-stable; -0 would not.
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

// All geometry is emitted in a y-flipped group so the image matches the
// usual mathematical orientation.
void emit_circle(std::string& out, Point c, double r, const char* style) {
  out += "  <circle cx=\"" + num(c.x) + "\" cy=\"" + num(c.y) + "\" r=\"" +
         num(r) + "\" " + style + "/>\n";
}

void emit_arc_to(std::string& out, const Arc& arc) {
  const Point end = arc.end();
  const int large = std::abs(arc.sweep) > kPi ? 1 : 0;
  const int sweep = arc.sweep >= 0.0 ? 1 : 0;
  out += " A " + num(arc.radius) + " " + num(arc.radius) + " 0 " +
         std::to_string(large) + " " + std::to_string(sweep) + " " +
         num(end.x) + " " + num(end.y);
}

}  // namespace

std::string render_svg(const SolutionRecord& solution,
                       const std::vector<Point>& points) {
  double minx = 0, miny = 0, maxx = 0, maxy = 0;
  if (!points.empty()) {
    minx = maxx = points[0].x;
    miny = maxy = points[0].y;
    for (const auto& p : points) {
      minx = std::min(minx, p.x);
      maxx = std::max(maxx, p.x);
      miny = std::min(miny, p.y);
      maxy = std::max(maxy, p.y);
    }
  }
  const double pad = 2.0 * solution.radius;
  minx -= pad;
  miny -= pad;
  maxx += pad;
  maxy += pad;
  const double width = std::max(1e-9, maxx - minx);
  const double height = std::max(1e-9, maxy - miny);
  const double dot = std::max(0.002 * std::max(width, height), 1e-6);
  const double stroke = 0.6 * dot;

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + num(minx) +
         " " + num(-maxy) + " " + num(width) + " " + num(height) + "\">\n";
  out += "<g transform=\"matrix(1 0 0 -1 0 0)\">\n";

  const std::string disk_style =
      "fill=\"#9ecae1\" fill-opacity=\"0.45\" stroke=\"#3182bd\" "
      "stroke-width=\"" + num(stroke) + "\"";
  for (const auto& d : solution.circles)
    emit_circle(out, d.center, d.radius, disk_style.c_str());

  const bool dubins = solution.variant == "dtspcp" && !solution.headings.empty();
  if (solution.tour.size() >= 2) {
    const std::size_t n = solution.tour.size();
    std::string path;
    const Point start = points[static_cast<std::size_t>(solution.tour[0])];
    path = "M " + num(start.x) + " " + num(start.y);
    for (std::size_t i = 0; i < n; ++i) {
      const int a = solution.tour[i];
      const int b = solution.tour[(i + 1) % n];
      const Point pb = points[static_cast<std::size_t>(b)];
      if (!dubins) {
        path += " L " + num(pb.x) + " " + num(pb.y);
        continue;
      }
      const Config ca{points[static_cast<std::size_t>(a)],
                      normalize_angle(solution.headings[i])};
      const Config cb{pb, normalize_angle(solution.headings[(i + 1) % n])};
      const auto maneuver = dubins_shortest(ca, cb, solution.dubins_radius);
      for (const auto& prim : maneuver.primitives()) {
        if (prim.length <= 1e-12) continue;
        if (prim.kind == DubinsPrimitive::Kind::Straight)
          path += " L " + num(prim.segment.b.x) + " " + num(prim.segment.b.y);
        else
          emit_arc_to(path, prim.arc);
      }
    }
    if (!dubins) path += " Z";
    out += "  <path d=\"" + path +
           "\" fill=\"none\" stroke=\"#636363\" stroke-width=\"" +
           num(stroke) + "\"/>\n";
  }

  const std::string node_style = "fill=\"#252525\"";
  for (const auto& p : points) emit_circle(out, p, dot, node_style.c_str());

  if (!solution.tour.empty()) {
    const Point start = points[static_cast<std::size_t>(solution.tour[0])];
    const std::string start_style =
        "fill=\"none\" stroke=\"#d62728\" stroke-width=\"" + num(stroke) +
        "\"";
    emit_circle(out, start, 1.8 * dot, start_style.c_str());
    if (solution.tour.size() >= 2) {
      // Direction marker: a small triangle a short way along the first edge.
      const Point next =
          points[static_cast<std::size_t>(solution.tour[1])];
      double heading;
      if (dubins) {
        heading = normalize_angle(solution.headings[0]);
      } else {
        heading = std::atan2(next.y - start.y, next.x - start.x);
      }
      const double len = 4.0 * dot;
      const Point tip{start.x + len * std::cos(heading),
                      start.y + len * std::sin(heading)};
      const Point left{start.x + 0.4 * len * std::cos(heading + 2.5),
                       start.y + 0.4 * len * std::sin(heading + 2.5)};
      const Point right{start.x + 0.4 * len * std::cos(heading - 2.5),
                        start.y + 0.4 * len * std::sin(heading - 2.5)};
      out += "  <polygon points=\"" + num(tip.x) + "," + num(tip.y) + " " +
             num(left.x) + "," + num(left.y) + " " + num(right.x) + "," +
             num(right.y) + "\" fill=\"#d62728\"/>\n";
    }
  }

  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace tspcp
