#include "tspcp/placement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tspcp {

bool curve_disk_collides(const Curve& curve, const Disk& disk, double tol) {
  if (const auto* seg = std::get_if<Segment>(&curve))
    return segment_disk_collides(*seg, disk, tol);
  return dubins_disk_collides(std::get<DubinsPath>(curve), disk, tol);
}

double curve_length(const Curve& curve) {
  if (const auto* seg = std::get_if<Segment>(&curve))
    return distance(seg->a, seg->b);
  return std::get<DubinsPath>(curve).length;
}

CycleGeometry euclidean_cycle(std::vector<Point> nodes_in_order) {
  CycleGeometry geom;
  geom.nodes = std::move(nodes_in_order);
  const std::size_t n = geom.nodes.size();
  geom.curves.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    geom.curves.emplace_back(Segment{geom.nodes[i], geom.nodes[(i + 1) % n]});
  return geom;
}

namespace {

struct CandidateTable {
  // Flattened per node: centers, penalties and clearance scores of
  // candidates_per_node samples.
  std::vector<Point> centers;
  std::vector<int> penalties;
  std::vector<double> spreads;
  int per_node = 0;

  Point center(int node, int cand) const {
    return centers[static_cast<std::size_t>(node * per_node + cand)];
  }
  int penalty(int node, int cand) const {
    return penalties[static_cast<std::size_t>(node * per_node + cand)];
  }
  double spread(int node, int cand) const {
    return spreads[static_cast<std::size_t>(node * per_node + cand)];
  }
};

// Samples per-node candidate centers on the radius circle and counts, for
// each candidate, how many of the node's remaining cycle curves it collides
// with.
CandidateTable build_candidates(const CycleGeometry& geom, double radius,
                                const PlacementParams& params) {
  const int n = static_cast<int>(geom.nodes.size());
  const int k = params.candidates_per_node;
  CandidateTable table;
  table.per_node = k;
  table.centers.reserve(static_cast<std::size_t>(n) * k);
  table.penalties.assign(static_cast<std::size_t>(n) * k, 0);
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < k; ++c) {
      const double theta = kTwoPi * c / k;
      const Point center = geom.nodes[static_cast<std::size_t>(i)] +
                           radius * Point{std::cos(theta), std::sin(theta)};
      table.centers.push_back(center);
      const Disk disk{center, radius};
      int penalty = 0;
      for (int e = i; e < n; ++e)
        if (curve_disk_collides(geom.curves[static_cast<std::size_t>(e)], disk,
                                params.tol))
          ++penalty;
      table.penalties[static_cast<std::size_t>(i * k + c)] = penalty;
      // Candidate preference while packing: stay clear of the other nodes,
      // whose disks will hug them.
      double spread = std::numeric_limits<double>::infinity();
      for (int u = 0; u < n; ++u) {
        if (u == i) continue;
        spread = std::min(
            spread, distance(center, geom.nodes[static_cast<std::size_t>(u)]));
      }
      table.spreads.push_back(spread);
    }
  }
  return table;
}

struct Assignment {
  std::vector<int> chosen;  // candidate index per node, -1 while unassigned
  int total_penalty = 0;
};

// Minimum center spacing for equal radii; touching disks are allowed.
bool disjoint_from(const Point& center, double radius,
                   const std::vector<int>& chosen, const CandidateTable& table,
                   int skip_node, double tol) {
  for (int u = 0; u < static_cast<int>(chosen.size()); ++u) {
    if (u == skip_node || chosen[static_cast<std::size_t>(u)] < 0) continue;
    const Point other = table.center(u, chosen[static_cast<std::size_t>(u)]);
    if (distance(center, other) < 2.0 * radius - tol) return false;
  }
  return true;
}

// Greedy sweep in cycle order followed by best-response refinement sweeps.
// `allowed` filters candidate indices (hard variant discards penalized
// ones). Deterministic for a fixed rng state.
std::optional<Assignment> solve_assignment(const CycleGeometry& geom,
                                           double radius,
                                           const CandidateTable& table,
                                           const std::vector<char>& allowed,
                                           const PlacementParams& params,
                                           Rng& rng, bool randomize) {
  const int n = static_cast<int>(geom.nodes.size());
  const int k = table.per_node;
  Assignment asg;
  asg.chosen.assign(static_cast<std::size_t>(n), -1);

  std::vector<int> scan(static_cast<std::size_t>(k));
  std::iota(scan.begin(), scan.end(), 0);

  auto pick_best = [&](int node, int current) -> int {
    if (randomize) rng_shuffle(rng, scan);
    int best = -1;
    int best_penalty = std::numeric_limits<int>::max();
    double best_spread = -1.0;
    for (const int c : scan) {
      if (!allowed[static_cast<std::size_t>(node * k + c)]) continue;
      const int penalty = table.penalty(node, c);
      if (penalty > best_penalty) continue;
      if (penalty == best_penalty && table.spread(node, c) <= best_spread)
        continue;
      const Point center = table.center(node, c);
      if (!disjoint_from(center, radius, asg.chosen, table, node, params.tol))
        continue;
      best = c;
      best_penalty = penalty;
      best_spread = table.spread(node, c);
    }
    (void)current;
    return best;
  };

  for (int i = 0; i < n; ++i) {
    const int c = pick_best(i, -1);
    if (c < 0) return std::nullopt;
    asg.chosen[static_cast<std::size_t>(i)] = c;
  }

  for (int sweep = 0; sweep < params.max_sweeps; ++sweep) {
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      const int cur = asg.chosen[static_cast<std::size_t>(i)];
      const int next = pick_best(i, cur);
      if (next >= 0 && next != cur) {
        // Only move when strictly better: lower penalty, or equal penalty
        // with more clearance.
        const bool better =
            table.penalty(i, next) < table.penalty(i, cur) ||
            (table.penalty(i, next) == table.penalty(i, cur) &&
             table.spread(i, next) > table.spread(i, cur) + 1e-12);
        if (better) {
          asg.chosen[static_cast<std::size_t>(i)] = next;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }

  asg.total_penalty = 0;
  for (int i = 0; i < n; ++i)
    asg.total_penalty += table.penalty(i, asg.chosen[static_cast<std::size_t>(i)]);
  return asg;
}

Placement to_placement(const Assignment& asg, const CandidateTable& table,
                       double radius) {
  Placement p;
  p.radius = radius;
  p.disks.reserve(asg.chosen.size());
  for (int i = 0; i < static_cast<int>(asg.chosen.size()); ++i)
    p.disks.push_back(
        {table.center(i, asg.chosen[static_cast<std::size_t>(i)]), radius});
  return p;
}

std::optional<Assignment> best_over_restarts(const CycleGeometry& geom,
                                             double radius,
                                             const CandidateTable& table,
                                             const std::vector<char>& allowed,
                                             const PlacementParams& params) {
  Rng rng(params.seed);
  std::optional<Assignment> best;
  for (int attempt = 0; attempt <= params.restarts; ++attempt) {
    auto asg = solve_assignment(geom, radius, table, allowed, params, rng,
                                attempt > 0);
    if (!asg) continue;
    if (!best || asg->total_penalty < best->total_penalty) best = std::move(asg);
    if (best->total_penalty == 0) break;
  }
  return best;
}

void check_inputs(const CycleGeometry& geom, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("radius must be positive");
  if (geom.nodes.size() < 2)
    throw std::invalid_argument("cycle needs at least 2 nodes");
  if (geom.curves.size() != geom.nodes.size())
    throw std::invalid_argument("cycle geometry curve count mismatch");
}

}  // namespace

std::optional<SoftPlacement> place_circles_soft(const CycleGeometry& geom,
                                                double radius,
                                                const PlacementParams& params) {
  check_inputs(geom, radius);
  const auto table = build_candidates(geom, radius, params);
  const std::vector<char> allowed(table.penalties.size(), 1);
  auto asg = best_over_restarts(geom, radius, table, allowed, params);
  if (!asg) return std::nullopt;
  return SoftPlacement{to_placement(*asg, table, radius), asg->total_penalty};
}

std::optional<Placement> place_circles_hard(const CycleGeometry& geom,
                                            double radius,
                                            const PlacementParams& params) {
  check_inputs(geom, radius);
  const auto table = build_candidates(geom, radius, params);
  std::vector<char> allowed(table.penalties.size(), 0);
  const int n = static_cast<int>(geom.nodes.size());
  for (int i = 0; i < n; ++i) {
    bool any = false;
    for (int c = 0; c < table.per_node; ++c) {
      const bool ok = table.penalty(i, c) == 0;
      allowed[static_cast<std::size_t>(i * table.per_node + c)] = ok;
      any = any || ok;
    }
    if (!any) return std::nullopt;  // every sample collides with the cycle
  }
  auto asg = best_over_restarts(geom, radius, table, allowed, params);
  if (!asg) return std::nullopt;
  return to_placement(*asg, table, radius);
}

double radius_upper_bound(const std::vector<Point>& points) {
  if (points.size() < 2)
    throw std::invalid_argument("radius bound needs at least 2 points");
  double minx = points[0].x, maxx = points[0].x;
  double miny = points[0].y, maxy = points[0].y;
  for (const auto& p : points) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  const double w = maxx - minx, h = maxy - miny;
  const double n = static_cast<double>(points.size());
  // n*pi*r^2 <= (w + 4r)(h + 4r): disk area cannot exceed the inflated box.
  const double a = n * kPi - 16.0;
  if (a > 0.0) {
    const double b = 4.0 * (w + h);
    const double disc = b * b + 4.0 * a * w * h;
    return (b + std::sqrt(disc)) / (2.0 * a);
  }
  // Too few disks for the area argument to bind; fall back to a bound on the
  // same length scale as the point spread.
  return w + h + std::hypot(w, h);
}

WpccpResult wpccp_bisection(const CycleGeometry& geom, double eps,
                            const PlacementParams& params) {
  if (eps <= 0.0) throw std::invalid_argument("eps must be positive");
  WpccpResult result;
  result.upper_bound = radius_upper_bound(geom.nodes);
  double lb = 0.0;
  double ub = result.upper_bound;
  while (ub - lb > eps) {
    const double mid = 0.5 * (lb + ub);
    ++result.oracle_calls;
    if (auto p = place_circles_hard(geom, mid, params)) {
      lb = mid;
      result.placement = std::move(p);
    } else {
      ub = mid;
    }
  }
  result.radius = result.placement ? lb : 0.0;
  result.upper_bound = ub;
  return result;
}

}  // namespace tspcp
