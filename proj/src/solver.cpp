#include "tspcp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tspcp {

namespace {

std::vector<int> nearest_neighbour_order(const std::vector<Point>& points,
                                         int start) {
  const int n = static_cast<int>(points.size());
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  int cur = start;
  order.push_back(cur);
  used[static_cast<std::size_t>(cur)] = 1;
  for (int step = 1; step < n; ++step) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int v = 0; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      const double d = distance(points[static_cast<std::size_t>(cur)],
                                points[static_cast<std::size_t>(v)]);
      if (d < best_d) {
        best_d = d;
        best = v;
      }
    }
    order.push_back(best);
    used[static_cast<std::size_t>(best)] = 1;
    cur = best;
  }
  return order;
}

// 2-opt plus block relocations on a plain graph (empty delete function).
std::vector<OperatorDescriptor> tsp_schedule() {
  std::vector<OperatorDescriptor> s;
  s.push_back({OperatorDescriptor::Kind::TwoOpt, 0, 0});
  for (const int m : {1, 2, 3}) {
    s.push_back({OperatorDescriptor::Kind::MoveRight, m, 0});
    s.push_back({OperatorDescriptor::Kind::MoveLeft, m, 0});
  }
  return s;
}

struct Context {
  Variant variant = Variant::Euclidean;
  const std::vector<Point>* points = nullptr;
  const DubinsEdges* edges = nullptr;

  int size() const { return static_cast<int>(points->size()); }

  CycleGeometry geometry(const std::vector<int>& order) const {
    CycleGeometry geom;
    const std::size_t n = order.size();
    geom.nodes.reserve(n);
    for (const int v : order)
      geom.nodes.push_back((*points)[static_cast<std::size_t>(v)]);
    geom.curves.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const int a = order[i];
      const int b = order[(i + 1) % n];
      if (variant == Variant::Euclidean)
        geom.curves.emplace_back(
            Segment{(*points)[static_cast<std::size_t>(a)],
                    (*points)[static_cast<std::size_t>(b)]});
      else
        geom.curves.emplace_back(edges->at(a, b));
    }
    return geom;
  }

  SelfDeletingGraph graph(const std::vector<Disk>& disk_by_node,
                          double tol) const {
    return variant == Variant::Euclidean
               ? generate_tspsd(*points, disk_by_node, tol)
               : generate_tspsd(*edges, disk_by_node, tol);
  }
};

std::optional<FixedRadiusResult> fixed_radius_impl(const Context& ctx,
                                                   double radius,
                                                   const Cycle& tour,
                                                   const SolverParams& params,
                                                   std::uint64_t salt) {
  const int n = ctx.size();
  const auto geom = ctx.geometry(tour.order);
  PlacementParams pp = params.placement;
  pp.seed = mix_seed(params.seed, 2 * salt + 1);
  const auto soft = place_circles_soft(geom, radius, pp);
  if (!soft) return std::nullopt;

  std::vector<Disk> disk_by_node(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t)
    disk_by_node[static_cast<std::size_t>(tour.order[static_cast<std::size_t>(t)])] =
        soft->placement.disks[static_cast<std::size_t>(t)];

  if (soft->total_penalty == 0)
    return FixedRadiusResult{tour, soft->placement, 0, false};

  const auto graph = ctx.graph(disk_by_node, params.placement.tol);
  GraspParams gp = params.grasp;
  gp.rng_seed = mix_seed(params.seed, 2 * salt + 2);
  const auto report = grasp(graph, &tour.order, gp);
  if (!report.best) return std::nullopt;

  FixedRadiusResult out;
  out.cycle = *report.best;
  out.placement.radius = radius;
  out.placement.disks.resize(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t)
    out.placement.disks[static_cast<std::size_t>(t)] =
        disk_by_node[static_cast<std::size_t>(out.cycle.order[static_cast<std::size_t>(t)])];
  out.initial_penalty = soft->total_penalty;
  out.rerouted = true;
  return out;
}

TspCpSolution outer_bisection(const Context& ctx, const Cycle& tour,
                              double eps, const SolverParams& params) {
  const auto geom = ctx.geometry(tour.order);
  PlacementParams pp = params.placement;
  pp.seed = mix_seed(params.seed, 0xB15EC7);
  const auto seeded = wpccp_bisection(geom, eps, pp);

  TspCpSolution sol;
  sol.variant = ctx.variant;
  sol.cycle = tour;
  sol.initial_radius = seeded.radius;
  double lb = seeded.radius;
  double ub = seeded.upper_bound;
  if (seeded.placement) {
    sol.placement = *seeded.placement;
    sol.radius = seeded.radius;
    sol.feasible = true;
  }

  std::uint64_t salt = 1;
  while (ub - lb > eps) {
    const double candidate = 0.5 * (lb + ub);
    auto res = fixed_radius_impl(ctx, candidate, tour, params, salt++);
    if (res) {
      lb = candidate;
      sol.cycle = res->cycle;
      sol.placement = res->placement;
      sol.radius = candidate;
      sol.feasible = true;
    } else {
      ub = candidate;
    }
    sol.trace.push_back({candidate, res.has_value(), lb, ub});
  }
  sol.upper_bound = ub;
  sol.cost = sol.cycle.cost;
  return sol;
}

}  // namespace

Cycle solve_tsp_initial(const std::vector<Point>& points, std::uint64_t seed) {
  const int n = static_cast<int>(points.size());
  if (n < 3) throw std::invalid_argument("initial tour needs at least 3 points");
  const auto graph = SelfDeletingGraph::euclidean(points);
  LocalSearch search(graph);
  const auto schedule = tsp_schedule();
  Rng rng(seed);
  const int starts = std::min(n, 8);
  std::optional<Cycle> best;
  for (int s = 0; s < starts; ++s) {
    const int start = static_cast<int>(rng_below(rng, static_cast<std::uint64_t>(n)));
    Cycle c = make_cycle(graph, nearest_neighbour_order(points, start));
    search.cvnd(c, schedule);
    if (!best || c.cost < best->cost) best = std::move(c);
  }
  return *best;
}

DubinsEdges build_dubins_edges(const std::vector<Point>& points,
                               const std::vector<double>& headings_by_node,
                               double rho) {
  if (rho <= 0.0) throw std::invalid_argument("turning radius must be positive");
  if (points.size() != headings_by_node.size())
    throw std::invalid_argument("one heading per node required");
  DubinsEdges edges;
  edges.n = static_cast<int>(points.size());
  edges.rho = rho;
  edges.configs.reserve(points.size());
  for (std::size_t v = 0; v < points.size(); ++v)
    edges.configs.push_back(
        Config{points[v], normalize_angle(headings_by_node[v])});
  edges.paths.resize(points.size() * points.size());
  for (int i = 0; i < edges.n; ++i)
    for (int j = 0; j < edges.n; ++j) {
      if (i == j) continue;
      edges.paths[static_cast<std::size_t>(i) * edges.n + j] = dubins_shortest(
          edges.configs[static_cast<std::size_t>(i)],
          edges.configs[static_cast<std::size_t>(j)], rho);
    }
  return edges;
}

SelfDeletingGraph generate_tspsd(const std::vector<Point>& points,
                                 const std::vector<Disk>& disk_by_node,
                                 double tol) {
  const int n = static_cast<int>(points.size());
  if (disk_by_node.size() != points.size())
    throw std::invalid_argument("one disk per node required");
  std::vector<std::array<int, 3>> deletions;
  for (int v = 0; v < n; ++v) {
    const Disk& disk = disk_by_node[static_cast<std::size_t>(v)];
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        const Segment seg{points[static_cast<std::size_t>(a)],
                          points[static_cast<std::size_t>(b)]};
        if (segment_disk_collides(seg, disk, tol)) {
          // A geometric obstacle blocks travel both ways.
          deletions.push_back({v, a, b});
          deletions.push_back({v, b, a});
        }
      }
  }
  return SelfDeletingGraph::euclidean(points, deletions);
}

SelfDeletingGraph generate_tspsd(const DubinsEdges& edges,
                                 const std::vector<Disk>& disk_by_node,
                                 double tol) {
  const int n = edges.n;
  if (disk_by_node.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("one disk per node required");
  std::vector<double> weights(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j)
        weights[static_cast<std::size_t>(i) * n + j] = edges.at(i, j).length;
  std::vector<std::array<int, 3>> deletions;
  for (int v = 0; v < n; ++v) {
    const Disk& disk = disk_by_node[static_cast<std::size_t>(v)];
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        // Forward and backward maneuvers differ, so each direction is
        // tested on its own curve.
        if (dubins_disk_collides(edges.at(a, b), disk, tol))
          deletions.push_back({v, a, b});
      }
  }
  std::vector<Point> coords;
  coords.reserve(static_cast<std::size_t>(n));
  for (const auto& c : edges.configs) coords.push_back(c.position);
  return SelfDeletingGraph(n, std::move(weights), deletions, std::move(coords));
}

std::optional<FixedRadiusResult> tspcp_fixed_radius(
    const std::vector<Point>& points, double radius, const Cycle& tsp_cycle,
    const SolverParams& params) {
  Context ctx{Variant::Euclidean, &points, nullptr};
  return fixed_radius_impl(ctx, radius, tsp_cycle, params, 0);
}

std::optional<FixedRadiusResult> dtspcp_fixed_radius(const DubinsEdges& edges,
                                                     double radius,
                                                     const Cycle& tour,
                                                     const SolverParams& params) {
  std::vector<Point> pts;
  pts.reserve(edges.configs.size());
  for (const auto& c : edges.configs) pts.push_back(c.position);
  Context ctx{Variant::Dubins, &pts, &edges};
  return fixed_radius_impl(ctx, radius, tour, params, 0);
}

TspCpSolution solve_tspcp(const std::vector<Point>& points, double eps,
                          const SolverParams& params) {
  if (points.size() < 3)
    throw std::invalid_argument("instance needs at least 3 nodes");
  if (eps <= 0.0) throw std::invalid_argument("eps must be positive");
  const Cycle tour = solve_tsp_initial(points, mix_seed(params.seed, 0xA110));
  Context ctx{Variant::Euclidean, &points, nullptr};
  return outer_bisection(ctx, tour, eps, params);
}

namespace {

struct HeadingAssignment {
  std::vector<int> choice;  // grid index per tour position
  double cost = 0.0;
};

// Exact headings for a fixed visit order: shortest path through the layered
// heading graph, closing the cycle by enumerating the first node's heading.
HeadingAssignment best_headings(const std::vector<Point>& points,
                                const std::vector<int>& order, double rho,
                                int k) {
  const int n = static_cast<int>(order.size());
  std::vector<double> grid(static_cast<std::size_t>(k));
  for (int h = 0; h < k; ++h) grid[static_cast<std::size_t>(h)] = kTwoPi * h / k;

  // edge_cost[i][h1][h2]: maneuver from order[i] to order[i+1 mod n].
  std::vector<double> edge_cost(static_cast<std::size_t>(n) * k * k);
  for (int i = 0; i < n; ++i) {
    const Point a = points[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
    const Point b = points[static_cast<std::size_t>(
        order[static_cast<std::size_t>((i + 1) % n)])];
    for (int h1 = 0; h1 < k; ++h1)
      for (int h2 = 0; h2 < k; ++h2)
        edge_cost[(static_cast<std::size_t>(i) * k + h1) * k + h2] =
            dubins_shortest({a, grid[static_cast<std::size_t>(h1)]},
                            {b, grid[static_cast<std::size_t>(h2)]}, rho)
                .length;
  }

  HeadingAssignment best;
  best.cost = std::numeric_limits<double>::infinity();
  std::vector<double> dp(static_cast<std::size_t>(k));
  std::vector<double> next(static_cast<std::size_t>(k));
  std::vector<int> parent(static_cast<std::size_t>(n) * k);
  for (int h0 = 0; h0 < k; ++h0) {
    std::fill(dp.begin(), dp.end(), std::numeric_limits<double>::infinity());
    dp[static_cast<std::size_t>(h0)] = 0.0;
    for (int i = 1; i < n; ++i) {
      std::fill(next.begin(), next.end(),
                std::numeric_limits<double>::infinity());
      for (int h2 = 0; h2 < k; ++h2) {
        for (int h1 = 0; h1 < k; ++h1) {
          const double c =
              dp[static_cast<std::size_t>(h1)] +
              edge_cost[(static_cast<std::size_t>(i - 1) * k + h1) * k + h2];
          if (c < next[static_cast<std::size_t>(h2)]) {
            next[static_cast<std::size_t>(h2)] = c;
            parent[static_cast<std::size_t>(i) * k + h2] = h1;
          }
        }
      }
      dp.swap(next);
    }
    for (int hl = 0; hl < k; ++hl) {
      const double total =
          dp[static_cast<std::size_t>(hl)] +
          edge_cost[(static_cast<std::size_t>(n - 1) * k + hl) * k + h0];
      if (total < best.cost) {
        best.cost = total;
        best.choice.assign(static_cast<std::size_t>(n), 0);
        int h = hl;
        for (int i = n - 1; i >= 1; --i) {
          best.choice[static_cast<std::size_t>(i)] = h;
          h = parent[static_cast<std::size_t>(i) * k + h];
        }
        best.choice[0] = h0;
      }
    }
  }
  return best;
}

std::vector<int> double_bridge(const std::vector<int>& order, Rng& rng) {
  const int n = static_cast<int>(order.size());
  if (n < 8) {
    std::vector<int> out = order;
    const int i = 1 + static_cast<int>(rng_below(rng, static_cast<std::uint64_t>(n - 2)));
    const int j = 1 + static_cast<int>(rng_below(rng, static_cast<std::uint64_t>(n - 2)));
    std::swap(out[static_cast<std::size_t>(i)], out[static_cast<std::size_t>(j)]);
    return out;
  }
  const int a = 1 + static_cast<int>(rng_below(rng, static_cast<std::uint64_t>(n - 6)));
  const int b = a + 1 + static_cast<int>(rng_below(rng, static_cast<std::uint64_t>(n - a - 4)));
  const int c = b + 1 + static_cast<int>(rng_below(rng, static_cast<std::uint64_t>(n - b - 2)));
  std::vector<int> out;
  out.reserve(order.size());
  out.insert(out.end(), order.begin(), order.begin() + a);
  out.insert(out.end(), order.begin() + b, order.begin() + c);
  out.insert(out.end(), order.begin() + a, order.begin() + b);
  out.insert(out.end(), order.begin() + c, order.end());
  return out;
}

}  // namespace

DtspInitial solve_dtsp_initial(const std::vector<Point>& points, double rho,
                               int k, std::uint64_t seed, int restarts) {
  if (rho <= 0.0) throw std::invalid_argument("turning radius must be positive");
  if (k < 2) throw std::invalid_argument("need at least 2 heading samples");
  const int n = static_cast<int>(points.size());
  if (n < 2) throw std::invalid_argument("instance needs at least 2 nodes");

  Cycle base;
  if (n == 2)
    base.order = {0, 1};  // out and back; only the headings matter
  else
    base = solve_tsp_initial(points, mix_seed(seed, 0xDu));
  Rng rng(mix_seed(seed, 0xE));

  DtspInitial best;
  auto consider = [&](const std::vector<int>& order) {
    const auto assignment = best_headings(points, order, rho, k);
    if (!best.order.empty() && assignment.cost >= best.cost) return;
    best.order = order;
    best.cost = assignment.cost;
    best.headings_by_node.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
      best.headings_by_node[static_cast<std::size_t>(
          order[static_cast<std::size_t>(i)])] =
          kTwoPi * assignment.choice[static_cast<std::size_t>(i)] / k;
  };
  consider(base.order);
  if (n > 3)
    for (int r = 0; r < restarts; ++r) consider(double_bridge(base.order, rng));
  return best;
}

TspCpSolution solve_dtspcp(const std::vector<Point>& points, double rho, int k,
                           double eps, const SolverParams& params) {
  if (points.size() < 3)
    throw std::invalid_argument("instance needs at least 3 nodes");
  if (eps <= 0.0) throw std::invalid_argument("eps must be positive");
  const auto initial =
      solve_dtsp_initial(points, rho, k, mix_seed(params.seed, 0xD7), params.dtsp_restarts);
  const auto edges = build_dubins_edges(points, initial.headings_by_node, rho);
  const Cycle tour{initial.order, initial.cost};
  Context ctx{Variant::Dubins, &points, &edges};
  TspCpSolution sol = outer_bisection(ctx, tour, eps, params);
  sol.headings = initial.headings_by_node;
  sol.dubins_radius = rho;
  return sol;
}

}  // namespace tspcp
