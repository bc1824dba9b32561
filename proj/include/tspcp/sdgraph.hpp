#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "tspcp/geometry.hpp"

namespace tspcp {

// Directed edge of the complete graph, by node ids.
struct EdgeRef {
  int from = 0;
  int to = 0;
};

// Complete directed weighted graph plus a delete function f: processing a
// node removes the edges f(v) from the residual graph. Immutable after
// construction; safe to share across concurrent solver runs.
class SelfDeletingGraph {
 public:
  // weights: n*n row-major, weight(i,j) at i*n+j; diagonal ignored.
  // deletions: triples (v, from, to) meaning edge (from,to) is in f(v).
  SelfDeletingGraph(int n, std::vector<double> weights,
                    const std::vector<std::array<int, 3>>& deletions = {},
                    std::vector<Point> coords = {});

  static SelfDeletingGraph euclidean(
      std::vector<Point> points,
      const std::vector<std::array<int, 3>>& deletions = {});

  int size() const { return n_; }
  int edge_id(int from, int to) const { return from * n_ + to; }
  double weight(int from, int to) const { return weights_[edge_id(from, to)]; }

  // Does node v delete edge (from,to)? O(1) bit probe.
  bool deletes(int v, int from, int to) const {
    const int e = edge_id(from, to);
    return (delete_bits_[static_cast<std::size_t>(v) * words_ +
                         static_cast<std::size_t>(e >> 6)] >>
            (e & 63)) &
           1u;
  }

  // Nodes whose delete set contains the edge, sorted ascending.
  const std::vector<int>& deleters(int from, int to) const {
    return deleters_[static_cast<std::size_t>(edge_id(from, to))];
  }

  // Average number of deleted edges per node.
  double avg_deletions_per_node() const { return avg_deletions_; }
  std::int64_t total_deletions() const { return total_deletions_; }

  bool has_coords() const { return !coords_.empty(); }
  const std::vector<Point>& coords() const { return coords_; }

  void check_node(int v) const;
  void check_edge(int from, int to) const;

 private:
  int n_ = 0;
  std::size_t words_ = 0;  // 64-bit words per node row of the bit matrix
  std::vector<double> weights_;
  std::vector<std::uint64_t> delete_bits_;   // n rows of n*n bits
  std::vector<std::vector<int>> deleters_;   // transpose, per edge id
  std::vector<Point> coords_;
  double avg_deletions_ = 0.0;
  std::int64_t total_deletions_ = 0;
};

// Incrementally maintained node set with O(1) add/remove/contains, plus
// per-edge counters of how many set members delete a registered edge.
// Single-owner; confined to one solver run.
class NodeSetAccumulator {
 public:
  explicit NodeSetAccumulator(const SelfDeletingGraph& graph);

  void clear();
  void add(int v);
  void remove(int v);
  bool contains(int v) const {
    return (mask_[static_cast<std::size_t>(v >> 6)] >> (v & 63)) & 1u;
  }
  int count() const { return count_; }

  // Starts tracking |deleters(edge) ∩ set| for the edge; returns the
  // current hit count.
  int register_edge(int from, int to);
  void unregister_all();
  int hits(int from, int to) const;
  // Number of registered edges with at least one deleter in the set.
  int dirty_edges() const { return dirty_; }

  // When set, counts every per-edge membership probe this accumulator makes.
  std::uint64_t* probe_counter = nullptr;

 private:
  void bump(int v, int delta);

  const SelfDeletingGraph* graph_;
  std::vector<std::uint64_t> mask_;
  int count_ = 0;
  std::vector<int> hit_count_;    // per edge id, valid when stamp matches
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 1;
  std::vector<int> registered_;
  int dirty_ = 0;
};

// True iff no node of X deletes the edge: deleters(e) ∩ X = ∅.
bool residual_contains(const SelfDeletingGraph& graph,
                       const NodeSetAccumulator& processed, EdgeRef e);

// Ordered node sequence representing a Hamiltonian cycle with implicit
// closing edge; cost is cached and kept equal to the recomputed tour cost.
struct Cycle {
  std::vector<int> order;
  double cost = 0.0;
};

// Closed-tour cost of visiting `order` and returning to its first node.
double cycle_cost(const SelfDeletingGraph& graph,
                  const std::vector<int>& order);

Cycle make_cycle(const SelfDeletingGraph& graph, std::vector<int> order);

// A cycle conforms to the delete function when every edge (p_i, p_{i+1})
// survives the deletions of the processed prefix {p_1..p_i} and the closing
// edge survives processing every node. Throws on non-permutation input.
bool is_f_conforming(const SelfDeletingGraph& graph,
                     const std::vector<int>& order);

void check_permutation(const SelfDeletingGraph& graph,
                       const std::vector<int>& order);

}  // namespace tspcp
