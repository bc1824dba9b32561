#include "tspcp/sdgraph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tspcp {

SelfDeletingGraph::SelfDeletingGraph(
    int n, std::vector<double> weights,
    const std::vector<std::array<int, 3>>& deletions, std::vector<Point> coords)
    : n_(n),
      words_((static_cast<std::size_t>(n) * static_cast<std::size_t>(n) + 63) /
             64),
      weights_(std::move(weights)),
      coords_(std::move(coords)) {
  if (n_ < 2) throw std::invalid_argument("graph needs at least 2 nodes");
  const std::size_t nn = static_cast<std::size_t>(n_) * n_;
  if (weights_.size() != nn)
    throw std::invalid_argument("weight matrix size mismatch");
  if (!coords_.empty() && coords_.size() != static_cast<std::size_t>(n_))
    throw std::invalid_argument("coordinate count mismatch");
  for (std::size_t i = 0; i < nn; ++i) {
    if (static_cast<int>(i / n_) == static_cast<int>(i % n_)) continue;
    if (!(weights_[i] >= 0.0) || !std::isfinite(weights_[i]))
      throw std::invalid_argument("weights must be finite and non-negative");
  }

  delete_bits_.assign(static_cast<std::size_t>(n_) * words_, 0);
  deleters_.assign(nn, {});
  for (const auto& [v, from, to] : deletions) {
    check_node(v);
    check_edge(from, to);
    const int e = edge_id(from, to);
    auto& word = delete_bits_[static_cast<std::size_t>(v) * words_ +
                              static_cast<std::size_t>(e >> 6)];
    const std::uint64_t bit = std::uint64_t{1} << (e & 63);
    if (word & bit) continue;  // duplicate triple
    word |= bit;
    deleters_[static_cast<std::size_t>(e)].push_back(v);
    ++total_deletions_;
  }
  for (auto& list : deleters_) std::sort(list.begin(), list.end());
  avg_deletions_ = static_cast<double>(total_deletions_) / n_;
}

SelfDeletingGraph SelfDeletingGraph::euclidean(
    std::vector<Point> points, const std::vector<std::array<int, 3>>& deletions) {
  const int n = static_cast<int>(points.size());
  std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      w[static_cast<std::size_t>(i) * n + j] = distance(points[i], points[j]);
  return SelfDeletingGraph(n, std::move(w), deletions, std::move(points));
}

void SelfDeletingGraph::check_node(int v) const {
  if (v < 0 || v >= n_)
    throw std::invalid_argument("unknown node id " + std::to_string(v));
}

void SelfDeletingGraph::check_edge(int from, int to) const {
  check_node(from);
  check_node(to);
  if (from == to)
    throw std::invalid_argument("self-loop edge (" + std::to_string(from) +
                                ", " + std::to_string(to) + ")");
}

NodeSetAccumulator::NodeSetAccumulator(const SelfDeletingGraph& graph)
    : graph_(&graph),
      mask_((static_cast<std::size_t>(graph.size()) + 63) / 64, 0) {}

void NodeSetAccumulator::clear() {
  std::fill(mask_.begin(), mask_.end(), 0);
  count_ = 0;
  unregister_all();
}

void NodeSetAccumulator::unregister_all() {
  registered_.clear();
  dirty_ = 0;
  ++epoch_;
}

void NodeSetAccumulator::bump(int v, int delta) {
  // Maintain hit counts of registered edges the node deletes. The per-node
  // delete sets are not stored as lists, so walk the registered edges; the
  // registered set is small (deferred-violation edges only).
  for (const int e : registered_) {
    const int from = e / graph_->size();
    const int to = e % graph_->size();
    if (probe_counter) ++*probe_counter;
    if (!graph_->deletes(v, from, to)) continue;
    int& c = hit_count_[static_cast<std::size_t>(e)];
    const int before = c;
    c += delta;
    if (before == 0 && c > 0) ++dirty_;
    if (before > 0 && c == 0) --dirty_;
  }
}

void NodeSetAccumulator::add(int v) {
  graph_->check_node(v);
  auto& word = mask_[static_cast<std::size_t>(v >> 6)];
  const std::uint64_t bit = std::uint64_t{1} << (v & 63);
  if (word & bit) return;
  word |= bit;
  ++count_;
  if (!registered_.empty()) bump(v, +1);
}

void NodeSetAccumulator::remove(int v) {
  graph_->check_node(v);
  auto& word = mask_[static_cast<std::size_t>(v >> 6)];
  const std::uint64_t bit = std::uint64_t{1} << (v & 63);
  if (!(word & bit)) return;
  word &= ~bit;
  --count_;
  if (!registered_.empty()) bump(v, -1);
}

int NodeSetAccumulator::register_edge(int from, int to) {
  graph_->check_edge(from, to);
  if (hit_count_.empty()) {
    const std::size_t nn =
        static_cast<std::size_t>(graph_->size()) * graph_->size();
    hit_count_.assign(nn, 0);
    stamp_.assign(nn, 0);
  }
  const int e = graph_->edge_id(from, to);
  if (stamp_[static_cast<std::size_t>(e)] != epoch_) {
    stamp_[static_cast<std::size_t>(e)] = epoch_;
    int c = 0;
    for (const int v : graph_->deleters(from, to)) {
      if (probe_counter) ++*probe_counter;
      if (contains(v)) ++c;
    }
    hit_count_[static_cast<std::size_t>(e)] = c;
    registered_.push_back(e);
    if (c > 0) ++dirty_;
  }
  return hit_count_[static_cast<std::size_t>(e)];
}

int NodeSetAccumulator::hits(int from, int to) const {
  const int e = graph_->edge_id(from, to);
  if (stamp_.empty() || stamp_[static_cast<std::size_t>(e)] != epoch_)
    return 0;
  return hit_count_[static_cast<std::size_t>(e)];
}

bool residual_contains(const SelfDeletingGraph& graph,
                       const NodeSetAccumulator& processed, EdgeRef e) {
  graph.check_edge(e.from, e.to);
  for (const int v : graph.deleters(e.from, e.to))
    if (processed.contains(v)) return false;
  return true;
}

void check_permutation(const SelfDeletingGraph& graph,
                       const std::vector<int>& order) {
  if (order.size() != static_cast<std::size_t>(graph.size()))
    throw std::invalid_argument("order is not a permutation: wrong length");
  std::vector<char> seen(order.size(), 0);
  for (const int v : order) {
    graph.check_node(v);
    if (seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("order is not a permutation: duplicate " +
                                  std::to_string(v));
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

double cycle_cost(const SelfDeletingGraph& graph,
                  const std::vector<int>& order) {
  const std::size_t n = order.size();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i)
    total += graph.weight(order[i], order[i + 1]);
  total += graph.weight(order[n - 1], order[0]);
  return total;
}

Cycle make_cycle(const SelfDeletingGraph& graph, std::vector<int> order) {
  check_permutation(graph, order);
  Cycle c{std::move(order), 0.0};
  c.cost = cycle_cost(graph, c.order);
  return c;
}

bool is_f_conforming(const SelfDeletingGraph& graph,
                     const std::vector<int>& order) {
  check_permutation(graph, order);
  const std::size_t n = order.size();
  NodeSetAccumulator processed(graph);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    processed.add(order[i]);
    if (!residual_contains(graph, processed, {order[i], order[i + 1]}))
      return false;
  }
  // Closing edge must survive processing every node.
  if (!graph.deleters(order[n - 1], order[0]).empty()) return false;
  return true;
}

}  // namespace tspcp
