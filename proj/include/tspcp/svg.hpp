#pragma once

#include <string>
#include <vector>

#include "tspcp/geometry.hpp"
#include "tspcp/instances.hpp"

namespace tspcp {

// Deterministic SVG of a solution: nodes as dots, the tour as a polyline
// (straight edges) or arc path (Dubins), obstacle circles, and a start
// marker showing the travel direction. Identical inputs produce identical
// bytes. One SVG user unit equals one length unit.
std::string render_svg(const SolutionRecord& solution,
                       const std::vector<Point>& points);

}  // namespace tspcp
