#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "tspcp/dubins.hpp"
#include "tspcp/geometry.hpp"
#include "tspcp/rng.hpp"

namespace tspcp {

// A cycle edge is either a straight segment or a Dubins maneuver.
using Curve = std::variant<Segment, DubinsPath>;

bool curve_disk_collides(const Curve& curve, const Disk& disk,
                         double tol = kEps);
double curve_length(const Curve& curve);

// Fixed tour geometry: curves[i] connects node i to node (i+1) % n.
struct CycleGeometry {
  std::vector<Point> nodes;
  std::vector<Curve> curves;
};

CycleGeometry euclidean_cycle(std::vector<Point> nodes_in_order);

// Per-position obstacle disks of one common radius. Every center sits at
// distance `radius` from its node and the disks are pairwise disjoint.
struct Placement {
  std::vector<Disk> disks;
  double radius = 0.0;
};

struct PlacementParams {
  int candidates_per_node = 64;  // uniformly spaced angular samples
  int max_sweeps = 50;
  int restarts = 5;
  std::uint64_t seed = 1;
  double tol = kEps;
};

struct SoftPlacement {
  Placement placement;
  // Number of (disk, curve) collisions against each disk's remaining cycle.
  int total_penalty = 0;
};

// Collisions between disks and the remaining cycle are a penalty to
// minimize; collisions between disks are never allowed. A disk at position i
// is only charged for curves i..n-1 (weak conformance: earlier edges may
// cross it freely). Returns nothing when no pairwise-disjoint assignment of
// candidates exists.
std::optional<SoftPlacement> place_circles_soft(const CycleGeometry& geom,
                                                double radius,
                                                const PlacementParams& params);

// Like the soft variant, but candidates colliding with the remaining cycle
// are discarded outright, so a returned placement is fully conforming.
std::optional<Placement> place_circles_hard(const CycleGeometry& geom,
                                            double radius,
                                            const PlacementParams& params);

// Conservative packing bound: disjoint disks with centers at distance r from
// their nodes all fit inside the node bounding box inflated by 2r.
double radius_upper_bound(const std::vector<Point>& points);

struct WpccpResult {
  std::optional<Placement> placement;
  double radius = 0.0;  // 0 marks infeasible spacing
  double upper_bound = 0.0;
  int oracle_calls = 0;
};

// Bisects the radius over [0, radius_upper_bound] with the hard placement as
// feasibility oracle; the input cycle is never modified.
WpccpResult wpccp_bisection(const CycleGeometry& geom, double eps,
                            const PlacementParams& params);

}  // namespace tspcp
