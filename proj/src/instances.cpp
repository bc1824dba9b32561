#include "tspcp/instances.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "tspcp/rng.hpp"

namespace tspcp {

namespace {

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

}  // namespace

Family family_from_string(const std::string& name) {
  if (name == "hex") return Family::Hex;
  if (name == "hex_noisy") return Family::HexNoisy;
  if (name == "mesh") return Family::Mesh;
  if (name == "square") return Family::Square;
  throw std::invalid_argument("unknown family: " + name);
}

const char* to_string(Family family) {
  switch (family) {
    case Family::Hex: return "hex";
    case Family::HexNoisy: return "hex_noisy";
    case Family::Mesh: return "mesh";
    case Family::Square: return "square";
  }
  return "?";
}

namespace {

std::vector<Point> hex_points(int n, double spacing) {
  // Axial lattice coordinates; squared lattice distance a^2 + ab + b^2 is
  // exact in integers, so the nearest-n selection is stable.
  struct Cand {
    long long d2;
    int a, b;
  };
  const int radius = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)))) + 2;
  std::vector<Cand> cands;
  for (int a = -radius; a <= radius; ++a)
    for (int b = -radius; b <= radius; ++b)
      cands.push_back({static_cast<long long>(a) * a +
                           static_cast<long long>(a) * b +
                           static_cast<long long>(b) * b,
                       a, b});
  std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
    if (x.d2 != y.d2) return x.d2 < y.d2;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(n));
  const double sq3_2 = std::sqrt(3.0) / 2.0;
  for (int i = 0; i < n; ++i) {
    const auto& c = cands[static_cast<std::size_t>(i)];
    pts.push_back({spacing * (c.a + 0.5 * c.b), spacing * (sq3_2 * c.b)});
  }
  return pts;
}

}  // namespace

std::vector<Point> generate(const InstanceSpec& spec) {
  if (spec.n < 3) throw std::invalid_argument("instance needs n >= 3");
  if (spec.spacing <= 0.0) throw std::invalid_argument("spacing must be positive");
  Rng rng(spec.seed);
  switch (spec.family) {
    case Family::Hex:
      return hex_points(spec.n, spec.spacing);
    case Family::HexNoisy: {
      auto pts = hex_points(spec.n, spec.spacing);
      const double bound = spec.noise < 0.0 ? 0.3 * spec.spacing : spec.noise;
      for (auto& p : pts) {
        const double r = bound * std::sqrt(rng_unit(rng));
        const double phi = kTwoPi * rng_unit(rng);
        p.x += r * std::cos(phi);
        p.y += r * std::sin(phi);
      }
      return pts;
    }
    case Family::Square: {
      const int g = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(spec.n))));
      std::vector<Point> pts;
      pts.reserve(static_cast<std::size_t>(spec.n));
      for (int i = 0; i < spec.n; ++i)
        pts.push_back({spec.spacing * (i % g), spec.spacing * (i / g)});
      return pts;
    }
    case Family::Mesh: {
      const double side = 1.7 * spec.spacing * std::sqrt(static_cast<double>(spec.n));
      std::vector<Point> pts;
      pts.reserve(static_cast<std::size_t>(spec.n));
      long long rejections = 0;
      while (static_cast<int>(pts.size()) < spec.n) {
        const Point cand{side * rng_unit(rng), side * rng_unit(rng)};
        bool ok = true;
        for (const auto& p : pts)
          if (distance(p, cand) < spec.spacing) {
            ok = false;
            break;
          }
        if (ok) {
          pts.push_back(cand);
        } else if (++rejections > 1000000) {
          throw std::runtime_error("mesh generation failed: density too high");
        }
      }
      return pts;
    }
  }
  throw std::invalid_argument("unknown family");
}

namespace {

// Strips comments and trailing whitespace; returns false for blank lines.
bool clean_line(std::string& line) {
  const auto hash = line.find('#');
  if (hash != std::string::npos) line.erase(hash);
  while (!line.empty() && (line.back() == ' ' || line.back() == '\t' ||
                           line.back() == '\r'))
    line.pop_back();
  std::size_t start = 0;
  while (start < line.size() && (line[start] == ' ' || line[start] == '\t'))
    ++start;
  line.erase(0, start);
  return !line.empty();
}

}  // namespace

ParsedInstance parse_instance(const std::string& text) {
  ParsedInstance inst;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int dimension = -1;
  bool saw_name = false, saw_type = false, saw_weight_type = false;
  bool in_coords = false, in_deletes = false, saw_eof = false;
  std::set<int> seen_ids;

  while (std::getline(in, line)) {
    ++lineno;
    if (!clean_line(line)) continue;
    if (saw_eof) parse_fail(lineno, "content after EOF");

    if (line == "NODE_COORD_SECTION") {
      if (!saw_name || !saw_type || dimension < 0 || !saw_weight_type)
        parse_fail(lineno, "NODE_COORD_SECTION before complete header");
      in_coords = true;
      in_deletes = false;
      continue;
    }
    if (line == "DELETE_SECTION") {
      if (static_cast<int>(inst.points.size()) != dimension)
        parse_fail(lineno, "DELETE_SECTION before all coordinates");
      in_coords = false;
      in_deletes = true;
      continue;
    }
    if (line == "EOF") {
      saw_eof = true;
      continue;
    }

    const auto colon = line.find(':');
    if (!in_coords && !in_deletes) {
      if (colon == std::string::npos)
        parse_fail(lineno, "expected 'KEYWORD: value'");
      const std::string key = line.substr(0, colon);
      std::string value = line.substr(colon + 1);
      std::string trimmed;
      std::istringstream vs(value);
      vs >> trimmed;
      if (key == "NAME") {
        inst.name = trimmed;
        saw_name = true;
      } else if (key == "TYPE") {
        if (trimmed != "TSPSD" && trimmed != "TSPCP")
          parse_fail(lineno, "TYPE must be TSPSD or TSPCP");
        inst.type = trimmed;
        saw_type = true;
      } else if (key == "DIMENSION") {
        try {
          dimension = std::stoi(trimmed);
        } catch (...) {
          parse_fail(lineno, "DIMENSION is not an integer");
        }
        if (dimension < 1) parse_fail(lineno, "DIMENSION must be positive");
      } else if (key == "EDGE_WEIGHT_TYPE") {
        if (trimmed != "EUC_2D")
          parse_fail(lineno, "only EDGE_WEIGHT_TYPE EUC_2D is supported");
        saw_weight_type = true;
      } else {
        parse_fail(lineno, "unknown keyword '" + key + "'");
      }
      continue;
    }

    if (in_coords) {
      std::istringstream cs(line);
      int id;
      double x, y;
      if (!(cs >> id >> x >> y)) parse_fail(lineno, "malformed coordinate line");
      std::string rest;
      if (cs >> rest) parse_fail(lineno, "trailing content on coordinate line");
      if (id < 1 || id > dimension)
        parse_fail(lineno, "node id " + std::to_string(id) + " out of range");
      if (!seen_ids.insert(id).second)
        parse_fail(lineno, "duplicate node id " + std::to_string(id));
      if (!std::isfinite(x) || !std::isfinite(y))
        parse_fail(lineno, "coordinates must be finite");
      if (static_cast<int>(inst.points.size()) + 1 != id)
        parse_fail(lineno, "node ids must appear in order 1..n");
      inst.points.push_back({x, y});
      continue;
    }

    // DELETE_SECTION: "<id> : (<a> <b>) (<c> <d>) ..."
    if (colon == std::string::npos)
      parse_fail(lineno, "expected '<id> : (<a> <b>) ...'");
    int owner;
    try {
      owner = std::stoi(line.substr(0, colon));
    } catch (...) {
      parse_fail(lineno, "malformed delete owner id");
    }
    if (owner < 1 || owner > dimension)
      parse_fail(lineno, "delete owner " + std::to_string(owner) + " out of range");
    std::size_t pos = colon + 1;
    bool any = false;
    while (pos < line.size()) {
      while (pos < line.size() && line[pos] == ' ') ++pos;
      if (pos >= line.size()) break;
      if (line[pos] != '(') parse_fail(lineno, "expected '(' in delete list");
      const auto close = line.find(')', pos);
      if (close == std::string::npos) parse_fail(lineno, "unclosed '(' in delete list");
      std::istringstream ps(line.substr(pos + 1, close - pos - 1));
      int a, b;
      if (!(ps >> a >> b)) parse_fail(lineno, "malformed delete pair");
      std::string rest;
      if (ps >> rest) parse_fail(lineno, "delete pair has extra content");
      if (a < 1 || a > dimension || b < 1 || b > dimension || a == b)
        parse_fail(lineno, "delete pair references invalid edge");
      inst.deletions.push_back({owner - 1, a - 1, b - 1});
      any = true;
      pos = close + 1;
    }
    if (!any) parse_fail(lineno, "empty delete list");
  }

  if (!saw_eof) parse_fail(lineno, "missing EOF");
  if (static_cast<int>(inst.points.size()) != dimension)
    parse_fail(lineno, "coordinate count does not match DIMENSION");
  if (!inst.deletions.empty() && inst.type != "TSPSD")
    parse_fail(lineno, "DELETE_SECTION requires TYPE: TSPSD");
  return inst;
}

std::string write_instance(const ParsedInstance& inst) {
  std::string out;
  out += "NAME: " + (inst.name.empty() ? std::string("unnamed") : inst.name) + "\n";
  out += "TYPE: " + inst.type + "\n";
  out += "DIMENSION: " + std::to_string(inst.points.size()) + "\n";
  out += "EDGE_WEIGHT_TYPE: EUC_2D\n";
  out += "NODE_COORD_SECTION\n";
  for (std::size_t i = 0; i < inst.points.size(); ++i)
    out += std::to_string(i + 1) + " " + fmt_real(inst.points[i].x) + " " +
           fmt_real(inst.points[i].y) + "\n";
  if (!inst.deletions.empty()) {
    out += "DELETE_SECTION\n";
    std::map<int, std::vector<std::pair<int, int>>> by_owner;
    for (const auto& [v, a, b] : inst.deletions)
      by_owner[v].push_back({a, b});
    for (auto& [owner, pairs] : by_owner) {
      std::sort(pairs.begin(), pairs.end());
      std::string row = std::to_string(owner + 1) + " :";
      for (const auto& [a, b] : pairs)
        row += " (" + std::to_string(a + 1) + " " + std::to_string(b + 1) + ")";
      out += row + "\n";
    }
  }
  out += "EOF\n";
  return out;
}

std::string write_solutions(const std::vector<SolutionRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += "SOLUTION\n";
    out += "instance: " + r.instance + "\n";
    out += "variant: " + r.variant + "\n";
    out += "seed: " + std::to_string(r.seed) + "\n";
    out += "radius: " + fmt_real(r.radius) + "\n";
    out += "cost: " + fmt_real(r.cost) + "\n";
    out += "tour:";
    for (const int v : r.tour) out += " " + std::to_string(v + 1);
    out += "\n";
    if (!r.headings.empty()) {
      out += "headings:";
      for (const double h : r.headings) out += " " + fmt_real(h);
      out += "\n";
      out += "dubins_radius: " + fmt_real(r.dubins_radius) + "\n";
    }
    if (!r.circles.empty()) {
      out += "circles:";
      for (const auto& d : r.circles)
        out += " (" + fmt_real(d.center.x) + " " + fmt_real(d.center.y) +
               " " + fmt_real(d.radius) + ")";
      out += "\n";
    }
    out += "wall_ms: " + std::to_string(r.wall_ms) + "\n";
    out += std::string("valid: ") + (r.valid ? "1" : "0") + "\n";
    out += "END\n";
  }
  return out;
}

std::vector<SolutionRecord> parse_solutions(const std::string& text) {
  std::vector<SolutionRecord> records;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool open = false;
  SolutionRecord cur;
  while (std::getline(in, line)) {
    ++lineno;
    if (!clean_line(line)) continue;
    if (line == "SOLUTION") {
      if (open) parse_fail(lineno, "nested SOLUTION block");
      open = true;
      cur = SolutionRecord{};
      continue;
    }
    if (line == "END") {
      if (!open) parse_fail(lineno, "END without SOLUTION");
      records.push_back(cur);
      open = false;
      continue;
    }
    if (!open) parse_fail(lineno, "content outside SOLUTION block");
    const auto colon = line.find(':');
    if (colon == std::string::npos) parse_fail(lineno, "expected 'key: value'");
    const std::string key = line.substr(0, colon);
    std::istringstream vs(line.substr(colon + 1));
    if (key == "instance") {
      vs >> cur.instance;
    } else if (key == "variant") {
      vs >> cur.variant;
    } else if (key == "seed") {
      vs >> cur.seed;
    } else if (key == "radius") {
      vs >> cur.radius;
    } else if (key == "cost") {
      vs >> cur.cost;
    } else if (key == "dubins_radius") {
      vs >> cur.dubins_radius;
    } else if (key == "wall_ms") {
      vs >> cur.wall_ms;
    } else if (key == "valid") {
      int v = 0;
      vs >> v;
      cur.valid = v != 0;
    } else if (key == "tour") {
      int id;
      while (vs >> id) cur.tour.push_back(id - 1);
    } else if (key == "headings") {
      double h;
      while (vs >> h) cur.headings.push_back(h);
    } else if (key == "circles") {
      std::string rest = vs.str();
      std::size_t pos = 0;
      while ((pos = rest.find('(', pos)) != std::string::npos) {
        const auto close = rest.find(')', pos);
        if (close == std::string::npos) parse_fail(lineno, "unclosed circle");
        std::istringstream cs(rest.substr(pos + 1, close - pos - 1));
        Disk d;
        if (!(cs >> d.center.x >> d.center.y >> d.radius))
          parse_fail(lineno, "malformed circle");
        cur.circles.push_back(d);
        pos = close + 1;
      }
    } else {
      parse_fail(lineno, "unknown key '" + key + "'");
    }
  }
  if (open) parse_fail(lineno, "unterminated SOLUTION block");
  return records;
}

}  // namespace tspcp
