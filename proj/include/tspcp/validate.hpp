#pragma once

#include <string>
#include <vector>

#include "tspcp/geometry.hpp"
#include "tspcp/solver.hpp"

namespace tspcp {

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> issues;

  void fail(std::string msg) {
    ok = false;
    issues.push_back(std::move(msg));
  }
};

// Independent re-validation of a circle-placement solution. Everything is
// re-derived from scratch: curves from the points (and headings), the delete
// function from curve/disk collisions, conformance by walking the tour with
// an explicit processed set. Shares only the geometric predicates with the
// solvers. `headings_by_tour` lists one heading per tour position.
ValidationReport validate_placement_solution(
    const std::vector<Point>& points, const std::vector<int>& tour,
    const std::vector<Disk>& disks_by_position, double radius,
    Variant variant, const std::vector<double>& headings_by_tour,
    double dubins_radius, double expected_cost, double tol = 1e-6);

// Independent re-validation of a plain self-deleting tour against explicit
// delete triples (v, from, to) and a weight table.
ValidationReport validate_tspsd_solution(
    int n, const std::vector<double>& weights,
    const std::vector<std::array<int, 3>>& deletions,
    const std::vector<int>& tour, double expected_cost, double tol = 1e-6);

}  // namespace tspcp
