#pragma once

// Test-only helpers: independent oracles and random instance builders. The
// oracles deliberately avoid the library's incremental machinery so they can
// vouch for it.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "tspcp/rng.hpp"
#include "tspcp/sdgraph.hpp"

namespace tspcp::testing {

struct RawInstance {
  int n = 0;
  std::vector<Point> points;                     // empty for abstract graphs
  std::vector<std::vector<double>> weight;       // n x n
  std::vector<std::array<int, 3>> deletions;     // (v, from, to)
};

inline SelfDeletingGraph to_graph(const RawInstance& inst) {
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(inst.n) * inst.n);
  for (const auto& row : inst.weight) w.insert(w.end(), row.begin(), row.end());
  return SelfDeletingGraph(inst.n, std::move(w), inst.deletions,
                           inst.points);
}

inline RawInstance random_euclidean_instance(int n, int deletions_per_node,
                                             Rng& rng, double box = 100.0) {
  RawInstance inst;
  inst.n = n;
  inst.points.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    inst.points.push_back({rng_unit(rng) * box, rng_unit(rng) * box});
  inst.weight.assign(static_cast<std::size_t>(n),
                     std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      inst.weight[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          distance(inst.points[static_cast<std::size_t>(i)],
                   inst.points[static_cast<std::size_t>(j)]);
  std::set<std::array<int, 3>> seen;
  for (int v = 0; v < n; ++v) {
    int added = 0;
    while (added < deletions_per_node) {
      const int a = static_cast<int>(rng_below(rng, static_cast<std::uint64_t>(n)));
      const int b = static_cast<int>(rng_below(rng, static_cast<std::uint64_t>(n)));
      if (a == b) continue;
      if (!seen.insert({v, a, b}).second) continue;
      inst.deletions.push_back({v, a, b});
      ++added;
    }
  }
  return inst;
}

// From-scratch conformance check working directly off the deletion triples.
inline bool oracle_conforming(const RawInstance& inst,
                              const std::vector<int>& order) {
  const int n = inst.n;
  std::vector<std::set<std::pair<int, int>>> f(static_cast<std::size_t>(n));
  for (const auto& [v, a, b] : inst.deletions)
    f[static_cast<std::size_t>(v)].insert({a, b});
  std::set<std::pair<int, int>> deleted;
  for (int i = 0; i < n; ++i) {
    const auto& fv = f[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
    deleted.insert(fv.begin(), fv.end());
    const int from = order[static_cast<std::size_t>(i)];
    const int to = order[static_cast<std::size_t>((i + 1) % n)];
    if (i + 1 < n && deleted.count({from, to})) return false;
  }
  // Closing edge is traversed after every node is processed.
  return deleted.count({order[static_cast<std::size_t>(n - 1)], order[0]}) == 0;
}

inline double oracle_cost(const RawInstance& inst,
                          const std::vector<int>& order) {
  double total = 0.0;
  const int n = inst.n;
  for (int i = 0; i < n; ++i)
    total += inst.weight[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]
                        [static_cast<std::size_t>(order[static_cast<std::size_t>((i + 1) % n)])];
  return total;
}

// Exhaustive optimum over all vertex sequences; infinity when infeasible.
inline double exhaustive_optimum(const RawInstance& inst,
                                 std::vector<int>* best_order = nullptr) {
  std::vector<int> order(static_cast<std::size_t>(inst.n));
  std::iota(order.begin(), order.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  std::sort(order.begin(), order.end());
  do {
    if (!oracle_conforming(inst, order)) continue;
    const double c = oracle_cost(inst, order);
    if (c < best) {
      best = c;
      if (best_order) *best_order = order;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

// Candidate builders mirroring the operator moves, written independently.
inline std::vector<int> apply_two_opt(const std::vector<int>& order, int i,
                                      int j) {
  std::vector<int> out = order;
  std::reverse(out.begin() + i, out.begin() + j + 1);
  return out;
}

inline std::vector<int> apply_move(const std::vector<int>& order, int i, int j,
                                   int m, bool right) {
  std::vector<int> out;
  out.reserve(order.size());
  if (right) {
    out.insert(out.end(), order.begin(), order.begin() + i);
    out.insert(out.end(), order.begin() + i + m, order.begin() + j + 1);
    out.insert(out.end(), order.begin() + i, order.begin() + i + m);
    out.insert(out.end(), order.begin() + j + 1, order.end());
  } else {
    out.insert(out.end(), order.begin(), order.begin() + j + 1);
    out.insert(out.end(), order.begin() + i, order.begin() + i + m);
    out.insert(out.end(), order.begin() + j + 1, order.begin() + i);
    out.insert(out.end(), order.begin() + i + m, order.end());
  }
  return out;
}

inline std::vector<int> apply_swap(const std::vector<int>& order, int i, int j,
                                   int k, int l) {
  std::vector<int> out;
  out.reserve(order.size());
  out.insert(out.end(), order.begin(), order.begin() + i);
  out.insert(out.end(), order.begin() + j, order.begin() + j + l);
  out.insert(out.end(), order.begin() + i + k, order.begin() + j);
  out.insert(out.end(), order.begin() + i, order.begin() + i + k);
  out.insert(out.end(), order.begin() + j + l, order.end());
  return out;
}

}  // namespace tspcp::testing
