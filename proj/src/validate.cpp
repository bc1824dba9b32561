#include "tspcp/validate.hpp"

#include <cmath>
#include <set>

#include "tspcp/dubins.hpp"

namespace tspcp {

namespace {

std::string edge_str(int a, int b) {
  return "(" + std::to_string(a + 1) + " -> " + std::to_string(b + 1) + ")";
}

bool check_permutation_or_fail(int n, const std::vector<int>& tour,
                               ValidationReport& report) {
  if (static_cast<int>(tour.size()) != n) {
    report.fail("tour length " + std::to_string(tour.size()) +
                " does not match instance size " + std::to_string(n));
    return false;
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (const int v : tour) {
    if (v < 0 || v >= n) {
      report.fail("tour references unknown node " + std::to_string(v + 1));
      return false;
    }
    if (seen[static_cast<std::size_t>(v)]) {
      report.fail("tour visits node " + std::to_string(v + 1) + " twice");
      return false;
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

}  // namespace

ValidationReport validate_placement_solution(
    const std::vector<Point>& points, const std::vector<int>& tour,
    const std::vector<Disk>& disks_by_position, double radius, Variant variant,
    const std::vector<double>& headings_by_tour, double dubins_radius,
    double expected_cost, double tol) {
  ValidationReport report;
  const int n = static_cast<int>(points.size());
  if (!check_permutation_or_fail(n, tour, report)) return report;
  if (static_cast<int>(disks_by_position.size()) != n) {
    report.fail("expected one circle per tour position");
    return report;
  }
  if (variant == Variant::Dubins) {
    if (static_cast<int>(headings_by_tour.size()) != n) {
      report.fail("expected one heading per tour position");
      return report;
    }
    if (dubins_radius <= 0.0) {
      report.fail("dubins radius must be positive");
      return report;
    }
  }

  // Curve between tour positions, rebuilt from raw inputs.
  auto curve_between = [&](int pos_a, int pos_b) -> Curve {
    const Point a = points[static_cast<std::size_t>(tour[static_cast<std::size_t>(pos_a)])];
    const Point b = points[static_cast<std::size_t>(tour[static_cast<std::size_t>(pos_b)])];
    if (variant == Variant::Euclidean) return Segment{a, b};
    return dubins_shortest(
        {a, normalize_angle(headings_by_tour[static_cast<std::size_t>(pos_a)])},
        {b, normalize_angle(headings_by_tour[static_cast<std::size_t>(pos_b)])},
        dubins_radius);
  };
  auto curve_collides = [&](const Curve& c, const Disk& d) {
    if (const auto* seg = std::get_if<Segment>(&c))
      return segment_disk_collides(*seg, d, tol);
    return dubins_disk_collides(std::get<DubinsPath>(c), d, tol);
  };

  // C1 equal radii, C2 node on its own circle.
  for (int i = 0; i < n; ++i) {
    const Disk& d = disks_by_position[static_cast<std::size_t>(i)];
    if (std::abs(d.radius - radius) > tol)
      report.fail("circle at position " + std::to_string(i + 1) +
                  " has radius " + std::to_string(d.radius) +
                  ", expected " + std::to_string(radius));
    const Point node = points[static_cast<std::size_t>(tour[static_cast<std::size_t>(i)])];
    if (std::abs(distance(node, d.center) - radius) > tol)
      report.fail("node " + std::to_string(tour[static_cast<std::size_t>(i)] + 1) +
                  " does not lie on its circle boundary");
  }

  // C3 pairwise disjoint.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!disks_disjoint(disks_by_position[static_cast<std::size_t>(i)],
                          disks_by_position[static_cast<std::size_t>(j)], tol))
        report.fail("circles at positions " + std::to_string(i + 1) + " and " +
                    std::to_string(j + 1) + " overlap");

  // C4 / conformance: the circle placed at position q must stay clear of
  // every curve traversed from position q onwards (the closing curve
  // included). Equivalently, each traversed edge must survive the circles of
  // all already-visited nodes.
  double cost = 0.0;
  for (int i = 0; i < n; ++i) {
    const Curve curve = curve_between(i, (i + 1) % n);
    cost += curve_length(curve);
    for (int q = 0; q <= i; ++q) {
      if (curve_collides(curve, disks_by_position[static_cast<std::size_t>(q)]))
        report.fail(
            "edge " +
            edge_str(tour[static_cast<std::size_t>(i)],
                     tour[static_cast<std::size_t>((i + 1) % n)]) +
            " at position " + std::to_string(i + 1) +
            " is deleted by node " +
            std::to_string(tour[static_cast<std::size_t>(q)] + 1) +
            " (circle placed at position " + std::to_string(q + 1) + ")");
    }
  }

  if (std::abs(cost - expected_cost) > tol * std::max(1.0, std::abs(cost)))
    report.fail("recorded cost " + std::to_string(expected_cost) +
                " differs from recomputed " + std::to_string(cost));
  return report;
}

ValidationReport validate_tspsd_solution(
    int n, const std::vector<double>& weights,
    const std::vector<std::array<int, 3>>& deletions,
    const std::vector<int>& tour, double expected_cost, double tol) {
  ValidationReport report;
  if (!check_permutation_or_fail(n, tour, report)) return report;

  // Deleter lookup rebuilt from the raw triples.
  std::set<std::array<int, 3>> triples(deletions.begin(), deletions.end());
  auto deleted_by = [&](int v, int a, int b) {
    return triples.count({v, a, b}) > 0;
  };

  double cost = 0.0;
  for (int i = 0; i < n; ++i) {
    const int a = tour[static_cast<std::size_t>(i)];
    const int b = tour[static_cast<std::size_t>((i + 1) % n)];
    cost += weights[static_cast<std::size_t>(a) * n + b];
    // The closing edge is traversed after every node has been processed.
    const int prefix_end = i + 1 < n ? i : n - 1;
    for (int q = 0; q <= prefix_end; ++q)
      if (deleted_by(tour[static_cast<std::size_t>(q)], a, b))
        report.fail("edge " + edge_str(a, b) + " at position " +
                    std::to_string(i + 1) + " is deleted by node " +
                    std::to_string(tour[static_cast<std::size_t>(q)] + 1));
  }

  if (std::abs(cost - expected_cost) > tol * std::max(1.0, std::abs(cost)))
    report.fail("recorded cost " + std::to_string(expected_cost) +
                " differs from recomputed " + std::to_string(cost));
  return report;
}

}  // namespace tspcp
