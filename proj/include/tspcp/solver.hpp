#pragma once

#include <optional>
#include <vector>

#include "tspcp/placement.hpp"
#include "tspcp/tspsd.hpp"

namespace tspcp {

enum class Variant { Euclidean, Dubins };

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct SolverParams {
  GraspParams grasp;          // applies to each fixed-radius rerouting call
  PlacementParams placement;
  double eps = 0.1;
  int headings = 8;           // Dubins heading samples per node
  int dtsp_restarts = 3;      // order perturbations tried for the initial tour
  std::uint64_t seed = 1;
};

struct BisectionStep {
  double candidate = 0.0;
  bool feasible = false;
  double lb = 0.0;
  double ub = 0.0;
};

struct TspCpSolution {
  Cycle cycle;
  Placement placement;  // disks aligned with cycle positions
  double radius = 0.0;  // 0 marks an infeasible/degenerate outcome
  double cost = 0.0;
  Variant variant = Variant::Euclidean;
  std::vector<double> headings;  // per node id (Dubins only)
  double dubins_radius = 0.0;    // Dubins only
  double initial_radius = 0.0;   // fixed-cycle bisection result it started from
  double upper_bound = 0.0;
  std::vector<BisectionStep> trace;
  bool feasible = false;
};

// Nearest-neighbour constructions improved to a 2-opt/relocation local
// optimum; deterministic for a fixed seed.
Cycle solve_tsp_initial(const std::vector<Point>& points, std::uint64_t seed);

// All-pairs shortest maneuvers between fixed oriented configurations.
struct DubinsEdges {
  int n = 0;
  double rho = 0.0;
  std::vector<Config> configs;     // per node id
  std::vector<DubinsPath> paths;   // n*n, ordered pairs

  const DubinsPath& at(int from, int to) const {
    return paths[static_cast<std::size_t>(from) * n + to];
  }
};

DubinsEdges build_dubins_edges(const std::vector<Point>& points,
                               const std::vector<double>& headings_by_node,
                               double rho);

// Derives the delete function from disk collisions: a colliding straight
// edge is deleted in both directions, Dubins maneuvers per direction.
// `disk_by_node[v]` is the obstacle placed when v is visited.
SelfDeletingGraph generate_tspsd(const std::vector<Point>& points,
                                 const std::vector<Disk>& disk_by_node,
                                 double tol = kEps);
SelfDeletingGraph generate_tspsd(const DubinsEdges& edges,
                                 const std::vector<Disk>& disk_by_node,
                                 double tol = kEps);

struct FixedRadiusResult {
  Cycle cycle;
  Placement placement;       // aligned with the returned cycle
  int initial_penalty = 0;   // soft-placement collisions before rerouting
  bool rerouted = false;
};

// Fixed-radius solve: soft placement around the given tour; if the placement
// already avoids the remaining cycle the tour is kept, otherwise the induced
// self-deleting instance is rerouted with the guided GRASP. Returns nothing
// when the radius is infeasible.
std::optional<FixedRadiusResult> tspcp_fixed_radius(
    const std::vector<Point>& points, double radius, const Cycle& tsp_cycle,
    const SolverParams& params);
std::optional<FixedRadiusResult> dtspcp_fixed_radius(
    const DubinsEdges& edges, double radius, const Cycle& tour,
    const SolverParams& params);

// Radius-maximizing solve: fixed-cycle bisection seeds the lower bound, then
// an outer bisection reroutes at each candidate radius.
TspCpSolution solve_tspcp(const std::vector<Point>& points, double eps,
                          const SolverParams& params);

struct DtspInitial {
  std::vector<int> order;
  std::vector<double> headings_by_node;
  double cost = 0.0;
};

// Tour order from the Euclidean heuristic (plus perturbation restarts);
// headings chosen optimally over the uniform k-grid by a layered
// shortest-path over the fixed order.
DtspInitial solve_dtsp_initial(const std::vector<Point>& points, double rho,
                               int k, std::uint64_t seed, int restarts = 3);

TspCpSolution solve_dtspcp(const std::vector<Point>& points, double rho,
                           int k, double eps, const SolverParams& params);

}  // namespace tspcp
