#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "tspcp/rng.hpp"
#include "tspcp/sdgraph.hpp"

namespace tspcp {

using Clock = std::chrono::steady_clock;
using Deadline = std::optional<Clock::time_point>;

inline bool deadline_expired(const Deadline& d) {
  return d && Clock::now() >= *d;
}

struct StopCondition {
  double time_budget_s = 0.0;        // <= 0: no wall-clock limit
  std::int64_t max_iterations = 0;   // <= 0: no iteration cap
};

struct GraspParams {
  StopCondition stop{10.0, 0};
  int rcl_size = 3;
  std::vector<int> move_lengths{1, 2, 3};
  std::vector<std::pair<int, int>> swap_length_pairs{
      {1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}};
  int construction_attempts = 20;
  double construction_time_limit_s = 20.0;
  // Deterministic bound on backtracking work per construction attempt;
  // 0 picks a size-dependent default.
  std::int64_t construction_expansion_cap = 0;
  std::uint64_t rng_seed = 1;

  // Shrunk budgets for CI-scale runs (construction 5 attempts x 2 s).
  GraspParams with_test_profile() const;
};

struct OperatorDescriptor {
  enum class Kind : std::uint8_t { TwoOpt, MoveRight, MoveLeft, SwapAsym };
  Kind kind = Kind::TwoOpt;
  int a = 0;  // m for moves, k for swaps
  int b = 0;  // l for swaps
};

// Fixed neighborhood order: 2-opt, then moves by ascending length (right
// before left), then swaps by ascending (k, l).
std::vector<OperatorDescriptor> make_schedule(const GraspParams& params);

struct ScanStats {
  // Primitive edge-membership probes (one residual test of an edge against
  // one node) performed during operator scans.
  std::uint64_t membership_checks = 0;
};

// First-improvement local search operators over one self-deleting graph.
// Feasibility and cost deltas are evaluated incrementally while scanning;
// every pass preserves the first and last node of the cycle and returns a
// conforming cycle.
class LocalSearch {
 public:
  explicit LocalSearch(const SelfDeletingGraph& graph);

  // Each pass throws std::logic_error when the input cycle does not conform,
  // applies the first improving feasible move it finds, and reports whether
  // the cycle changed.
  bool two_opt_pass(Cycle& c);
  bool move_pass(Cycle& c, int m, bool move_right);
  // Scans block lengths (k, l); when k != l the mirrored (l, k) scan runs
  // after an unsuccessful first scan.
  bool swap_pass(Cycle& c, int k, int l);

  bool run_operator(Cycle& c, const OperatorDescriptor& op);

  // Cyclic descent over the schedule: any improvement restarts the schedule;
  // returns after one full non-improving sweep or when the deadline hits.
  void cvnd(Cycle& c, const std::vector<OperatorDescriptor>& schedule,
            const Deadline& deadline = {});

  ScanStats stats;
  // Test hook invoked for every scanned candidate pair: (active operator,
  // i, j, feasible, cost delta), 0-based positions.
  std::function<void(const OperatorDescriptor&, int, int, bool, double)> audit;

 private:
  void index_positions(const std::vector<int>& order);
  void require_conforming(const Cycle& c) const;
  bool scan_two_opt(Cycle& c);
  bool scan_move(Cycle& c, int m, bool right);
  bool scan_swap(Cycle& c, int k, int l);

  const SelfDeletingGraph& graph_;
  std::vector<int> pos_;
  NodeSetAccumulator prefix_;  // doubles as the deferred-violation tracker
  std::vector<int> scratch_;
};

// Convenience single-pass wrappers.
Cycle two_opt_pass(const SelfDeletingGraph& graph, const Cycle& c);
Cycle move_pass(const SelfDeletingGraph& graph, const Cycle& c, int m,
                bool move_right);
Cycle swap_pass(const SelfDeletingGraph& graph, const Cycle& c, int k, int l);
Cycle cvnd(const SelfDeletingGraph& graph, const Cycle& c,
           const std::vector<OperatorDescriptor>& schedule,
           const Deadline& deadline = {});

enum class ConstructionStatus {
  Found,      // conforming cycle built
  Exhausted,  // complete search space explored, no cycle exists
  Limit,      // deadline or expansion cap hit first
};

struct ConstructionResult {
  ConstructionStatus status = ConstructionStatus::Limit;
  std::optional<Cycle> cycle;
};

// Builds a conforming cycle back to front: with the suffix fixed, the
// processed prefix is its complement, so a candidate predecessor is
// admissible iff its edge into the suffix survives every node outside the
// suffix. Depth-first with backtracking. A guide tour pins the cycle start
// to the guide's first node and orders candidates guide-first, so an
// entirely admissible guide is returned verbatim; otherwise candidates are
// ranked by edge weight and drawn semi-greedily from the rcl_size best.
ConstructionResult backward_search(const SelfDeletingGraph& graph,
                                   const std::vector<int>* guide,
                                   const GraspParams& params, Rng& rng,
                                   const Deadline& deadline);

struct GraspReport {
  std::optional<Cycle> best;
  std::int64_t iterations = 0;
  std::int64_t constructions_failed = 0;
  bool proven_infeasible = false;
};

// Multi-start construction + cyclic descent; returns the best conforming
// cycle found, or nothing when construction never succeeds within
// construction_attempts tries (the instance is then treated as infeasible).
GraspReport grasp(const SelfDeletingGraph& graph,
                  const std::vector<int>* guide, const GraspParams& params);

}  // namespace tspcp
