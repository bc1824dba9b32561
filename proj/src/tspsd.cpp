#include "tspcp/tspsd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tspcp {

namespace {

// Strict-improvement threshold; prevents cycling on zero-cost moves.
constexpr double kImproveEps = 1e-9;

Deadline sooner(const Deadline& a, const Deadline& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

}  // namespace

GraspParams GraspParams::with_test_profile() const {
  GraspParams p = *this;
  p.construction_attempts = 5;
  p.construction_time_limit_s = 2.0;
  return p;
}

std::vector<OperatorDescriptor> make_schedule(const GraspParams& params) {
  std::vector<OperatorDescriptor> s;
  s.push_back({OperatorDescriptor::Kind::TwoOpt, 0, 0});
  for (const int m : params.move_lengths) {
    s.push_back({OperatorDescriptor::Kind::MoveRight, m, 0});
    s.push_back({OperatorDescriptor::Kind::MoveLeft, m, 0});
  }
  for (const auto& [k, l] : params.swap_length_pairs)
    s.push_back({OperatorDescriptor::Kind::SwapAsym, k, l});
  return s;
}

LocalSearch::LocalSearch(const SelfDeletingGraph& graph)
    : graph_(graph),
      pos_(static_cast<std::size_t>(graph.size()), 0),
      prefix_(graph) {
  prefix_.probe_counter = &stats.membership_checks;
}

void LocalSearch::index_positions(const std::vector<int>& order) {
  for (int p = 0; p < static_cast<int>(order.size()); ++p)
    pos_[static_cast<std::size_t>(order[p])] = p;
}

void LocalSearch::require_conforming(const Cycle& c) const {
  if (!is_f_conforming(graph_, c.order))
    throw std::logic_error("operator input cycle is not f-conforming");
  if (std::abs(c.cost - cycle_cost(graph_, c.order)) > 1e-6)
    throw std::logic_error("cycle cached cost is stale");
}

bool LocalSearch::two_opt_pass(Cycle& c) {
  require_conforming(c);
  return scan_two_opt(c);
}

bool LocalSearch::move_pass(Cycle& c, int m, bool move_right) {
  if (m < 1) throw std::invalid_argument("move length must be >= 1");
  require_conforming(c);
  return scan_move(c, m, move_right);
}

bool LocalSearch::swap_pass(Cycle& c, int k, int l) {
  if (k < 1 || l < 1) throw std::invalid_argument("swap lengths must be >= 1");
  require_conforming(c);
  if (scan_swap(c, k, l)) return true;
  if (k != l) return scan_swap(c, l, k);
  return false;
}

bool LocalSearch::run_operator(Cycle& c, const OperatorDescriptor& op) {
  switch (op.kind) {
    case OperatorDescriptor::Kind::TwoOpt: return two_opt_pass(c);
    case OperatorDescriptor::Kind::MoveRight: return move_pass(c, op.a, true);
    case OperatorDescriptor::Kind::MoveLeft: return move_pass(c, op.a, false);
    case OperatorDescriptor::Kind::SwapAsym: return swap_pass(c, op.a, op.b);
  }
  return false;
}

void LocalSearch::cvnd(Cycle& c, const std::vector<OperatorDescriptor>& schedule,
                       const Deadline& deadline) {
  if (schedule.empty()) return;
  std::size_t idx = 0;
  std::size_t misses = 0;
  while (misses < schedule.size()) {
    if (deadline_expired(deadline)) return;
    if (run_operator(c, schedule[idx])) {
      idx = 0;  // restart the neighborhood cycle after any improvement
      misses = 0;
    } else {
      idx = (idx + 1) % schedule.size();
      ++misses;
    }
  }
}

// Inverts the block [i, j]. The inverted edges accumulate into a running
// directed cost difference, prefix deletions of already-inverted edges are
// tracked as deferred violations that clear as the prefix shrinks, so each
// candidate pair costs O(deleters) to decide.
bool LocalSearch::scan_two_opt(Cycle& c) {
  const OperatorDescriptor desc{OperatorDescriptor::Kind::TwoOpt, 0, 0};
  const auto& o = c.order;
  const int n = static_cast<int>(o.size());
  index_positions(o);
  auto edge_free = [&](int from, int to, auto in_set) {
    for (const int v : graph_.deleters(from, to)) {
      ++stats.membership_checks;
      if (in_set(pos_[static_cast<std::size_t>(v)])) return false;
    }
    return true;
  };

  for (int j = n - 2; j >= 2; --j) {
    prefix_.clear();
    for (int p = 0; p < j; ++p) prefix_.add(o[static_cast<std::size_t>(p)]);
    double inversion_diff = 0.0;
    for (int i = j - 1; i >= 1; --i) {
      // Prefix shrinks to positions [0, i); deferred violations whose last
      // prefix deleter just left become clean again.
      prefix_.remove(o[static_cast<std::size_t>(i)]);
      const int u = o[static_cast<std::size_t>(i + 1)];
      const int v = o[static_cast<std::size_t>(i)];
      inversion_diff += graph_.weight(u, v) - graph_.weight(v, u);
      const double delta =
          inversion_diff + graph_.weight(o[static_cast<std::size_t>(i - 1)], o[static_cast<std::size_t>(j)]) -
          graph_.weight(o[static_cast<std::size_t>(i - 1)], v) +
          graph_.weight(v, o[static_cast<std::size_t>(j + 1)]) -
          graph_.weight(o[static_cast<std::size_t>(j)], o[static_cast<std::size_t>(j + 1)]);

      // The inverted block itself must not delete its newly added edge; a
      // violation persists for every longer block, so stop this j.
      if (!edge_free(u, v, [&](int p) { return p > i && p <= j; })) {
        if (audit) audit(desc, i, j, false, delta);
        break;
      }
      bool feasible = true;
      if (!edge_free(u, v, [&](int p) { return p < i; })) {
        prefix_.register_edge(u, v);  // deferred: deleters may still leave A
        feasible = false;
      }
      feasible = feasible && prefix_.dirty_edges() == 0 &&
                 edge_free(o[static_cast<std::size_t>(i - 1)],
                           o[static_cast<std::size_t>(j)],
                           [&](int p) { return p < i; }) &&
                 edge_free(v, o[static_cast<std::size_t>(j + 1)],
                           [&](int p) { return p <= j; });
      if (audit) audit(desc, i, j, feasible, delta);
      if (feasible && delta < -kImproveEps) {
        std::reverse(c.order.begin() + i, c.order.begin() + j + 1);
        c.cost += delta;
        return true;
      }
    }
  }
  return false;
}

bool LocalSearch::scan_move(Cycle& c, int m, bool right) {
  const OperatorDescriptor desc{right ? OperatorDescriptor::Kind::MoveRight
                                      : OperatorDescriptor::Kind::MoveLeft,
                                m, 0};
  const auto& o = c.order;
  const int n = static_cast<int>(o.size());
  index_positions(o);
  auto edge_free = [&](int from, int to, auto in_set) {
    for (const int v : graph_.deleters(from, to)) {
      ++stats.membership_checks;
      if (in_set(pos_[static_cast<std::size_t>(v)])) return false;
    }
    return true;
  };
  auto block_deletes = [&](int node, int epos) {
    // Does `node` delete the cycle edge starting at position epos?
    ++stats.membership_checks;
    return graph_.deletes(node, o[static_cast<std::size_t>(epos)],
                          o[static_cast<std::size_t>(epos + 1)]);
  };

  if (right) {
    for (int i = 1; i + m <= n - 2; ++i) {
      // Bridging edge that closes the gap left by the block.
      if (!edge_free(o[static_cast<std::size_t>(i - 1)],
                     o[static_cast<std::size_t>(i + m)],
                     [&](int p) { return p < i; }))
        continue;
      for (int j = i + m; j <= n - 2; ++j) {
        const double delta =
            graph_.weight(o[static_cast<std::size_t>(i - 1)], o[static_cast<std::size_t>(i + m)]) -
            graph_.weight(o[static_cast<std::size_t>(i - 1)], o[static_cast<std::size_t>(i)]) +
            graph_.weight(o[static_cast<std::size_t>(j)], o[static_cast<std::size_t>(i)]) -
            graph_.weight(o[static_cast<std::size_t>(i + m - 1)], o[static_cast<std::size_t>(i + m)]) +
            graph_.weight(o[static_cast<std::size_t>(i + m - 1)], o[static_cast<std::size_t>(j + 1)]) -
            graph_.weight(o[static_cast<std::size_t>(j)], o[static_cast<std::size_t>(j + 1)]);
        // Nodes the block jumps over must not delete its internal edges;
        // once violated, every farther j stays violated.
        bool skipped_deletes = false;
        for (int u = i; u < i + m - 1 && !skipped_deletes; ++u)
          skipped_deletes = block_deletes(o[static_cast<std::size_t>(j)], u);
        if (skipped_deletes) {
          if (audit) audit(desc, i, j, false, delta);
          break;
        }
        const bool feasible =
            edge_free(o[static_cast<std::size_t>(j)], o[static_cast<std::size_t>(i)],
                      [&](int p) { return p < i || (p >= i + m && p <= j); }) &&
            edge_free(o[static_cast<std::size_t>(i + m - 1)],
                      o[static_cast<std::size_t>(j + 1)],
                      [&](int p) { return p <= j; });
        if (audit) audit(desc, i, j, feasible, delta);
        if (feasible && delta < -kImproveEps) {
          std::rotate(c.order.begin() + i, c.order.begin() + i + m,
                      c.order.begin() + j + 1);
          c.cost += delta;
          return true;
        }
      }
    }
    return false;
  }

  for (int i = 2; i + m <= n - 1; ++i) {
    // Bridge check is independent of the target here: every node ahead of
    // the block's old slot stays ahead of the bridging edge.
    if (!edge_free(o[static_cast<std::size_t>(i - 1)],
                   o[static_cast<std::size_t>(i + m)],
                   [&](int p) { return p < i + m; }))
      continue;
    for (int j = i - 2; j >= 0; --j) {
      const double delta =
          graph_.weight(o[static_cast<std::size_t>(j)], o[static_cast<std::size_t>(i)]) -
          graph_.weight(o[static_cast<std::size_t>(j)], o[static_cast<std::size_t>(j + 1)]) +
          graph_.weight(o[static_cast<std::size_t>(i + m - 1)], o[static_cast<std::size_t>(j + 1)]) -
          graph_.weight(o[static_cast<std::size_t>(i - 1)], o[static_cast<std::size_t>(i)]) +
          graph_.weight(o[static_cast<std::size_t>(i - 1)], o[static_cast<std::size_t>(i + m)]) -
          graph_.weight(o[static_cast<std::size_t>(i + m - 1)], o[static_cast<std::size_t>(i + m)]);
      // The block now precedes the nodes it jumped over; it must not delete
      // the edge that just entered the jumped-over range.
      if (j + 2 <= i - 1) {
        bool bad = false;
        for (int u = i; u < i + m && !bad; ++u) {
          ++stats.membership_checks;
          bad = graph_.deletes(o[static_cast<std::size_t>(u)],
                               o[static_cast<std::size_t>(j + 1)],
                               o[static_cast<std::size_t>(j + 2)]);
        }
        if (bad) {
          if (audit) audit(desc, i, j, false, delta);
          break;
        }
      }
      const bool feasible =
          edge_free(o[static_cast<std::size_t>(j)], o[static_cast<std::size_t>(i)],
                    [&](int p) { return p <= j; }) &&
          edge_free(o[static_cast<std::size_t>(i + m - 1)],
                    o[static_cast<std::size_t>(j + 1)],
                    [&](int p) { return p <= j || (p >= i && p < i + m); });
      if (audit) audit(desc, i, j, feasible, delta);
      if (feasible && delta < -kImproveEps) {
        std::rotate(c.order.begin() + j + 1, c.order.begin() + i,
                    c.order.begin() + i + m);
        c.cost += delta;
        return true;
      }
    }
  }
  return false;
}

bool LocalSearch::scan_swap(Cycle& c, int k, int l) {
  const OperatorDescriptor desc{OperatorDescriptor::Kind::SwapAsym, k, l};
  const auto& o = c.order;
  const int n = static_cast<int>(o.size());
  index_positions(o);
  auto edge_free = [&](int from, int to, auto in_set) {
    for (const int v : graph_.deleters(from, to)) {
      ++stats.membership_checks;
      if (in_set(pos_[static_cast<std::size_t>(v)])) return false;
    }
    return true;
  };

  for (int j = n - l - 1; j >= k + 1; --j) {
    for (int i = j - k; i >= 1; --i) {
      const bool adjacent = i + k == j;
      const int e1f = o[static_cast<std::size_t>(i - 1)], e1t = o[static_cast<std::size_t>(j)];
      const int e4f = o[static_cast<std::size_t>(i + k - 1)], e4t = o[static_cast<std::size_t>(j + l)];
      const int e2f = o[static_cast<std::size_t>(j + l - 1)];
      const int e2t = adjacent ? o[static_cast<std::size_t>(i)] : o[static_cast<std::size_t>(i + k)];
      const int e3f = adjacent ? e2f : o[static_cast<std::size_t>(j - 1)];
      const int e3t = o[static_cast<std::size_t>(i)];

      double delta;
      if (adjacent) {
        delta = graph_.weight(e1f, e1t) + graph_.weight(e2f, e2t) +
                graph_.weight(e4f, e4t) -
                graph_.weight(o[static_cast<std::size_t>(i - 1)], o[static_cast<std::size_t>(i)]) -
                graph_.weight(o[static_cast<std::size_t>(i + k - 1)], o[static_cast<std::size_t>(j)]) -
                graph_.weight(o[static_cast<std::size_t>(j + l - 1)], o[static_cast<std::size_t>(j + l)]);
      } else {
        delta = graph_.weight(e1f, e1t) + graph_.weight(e2f, e2t) +
                graph_.weight(e3f, e3t) + graph_.weight(e4f, e4t) -
                graph_.weight(o[static_cast<std::size_t>(i - 1)], o[static_cast<std::size_t>(i)]) -
                graph_.weight(o[static_cast<std::size_t>(i + k - 1)], o[static_cast<std::size_t>(i + k)]) -
                graph_.weight(o[static_cast<std::size_t>(j - 1)], o[static_cast<std::size_t>(j)]) -
                graph_.weight(o[static_cast<std::size_t>(j + l - 1)], o[static_cast<std::size_t>(j + l)]);
      }

      // The later block shifts left across the in-between nodes, so it must
      // not delete their internal edges; the violation persists as the gap
      // grows, so stop this j.
      if (i + k + 1 <= j - 1) {
        bool bad = false;
        for (int y = j; y < j + l && !bad; ++y) {
          ++stats.membership_checks;
          bad = graph_.deletes(o[static_cast<std::size_t>(y)],
                               o[static_cast<std::size_t>(i + k)],
                               o[static_cast<std::size_t>(i + k + 1)]);
        }
        if (bad) {
          if (audit) audit(desc, i, j, false, delta);
          break;
        }
      }

      bool feasible =
          edge_free(e1f, e1t, [&](int p) { return p < i; }) &&
          edge_free(e2f, e2t,
                    [&](int p) { return p < i || (p >= j && p < j + l); }) &&
          edge_free(e3f, e3t,
                    [&](int p) { return p < i || (p >= i + k && p < j + l); }) &&
          edge_free(e4f, e4t, [&](int p) { return p < j + l; });
      // The earlier block shifts right: the jumped-over nodes and the later
      // block must not delete its internal edges.
      for (int u = i; u < i + k - 1 && feasible; ++u)
        feasible = edge_free(
            o[static_cast<std::size_t>(u)], o[static_cast<std::size_t>(u + 1)],
            [&](int p) { return (p >= i + k && p < j) || (p >= j && p < j + l); });
      if (audit) audit(desc, i, j, feasible, delta);
      if (feasible && delta < -kImproveEps) {
        scratch_.clear();
        scratch_.insert(scratch_.end(), o.begin(), o.begin() + i);
        scratch_.insert(scratch_.end(), o.begin() + j, o.begin() + j + l);
        scratch_.insert(scratch_.end(), o.begin() + i + k, o.begin() + j);
        scratch_.insert(scratch_.end(), o.begin() + i, o.begin() + i + k);
        scratch_.insert(scratch_.end(), o.begin() + j + l, o.end());
        c.order = scratch_;
        c.cost += delta;
        return true;
      }
    }
  }
  return false;
}

Cycle two_opt_pass(const SelfDeletingGraph& graph, const Cycle& c) {
  Cycle out = c;
  LocalSearch(graph).two_opt_pass(out);
  return out;
}

Cycle move_pass(const SelfDeletingGraph& graph, const Cycle& c, int m,
                bool move_right) {
  Cycle out = c;
  LocalSearch(graph).move_pass(out, m, move_right);
  return out;
}

Cycle swap_pass(const SelfDeletingGraph& graph, const Cycle& c, int k, int l) {
  Cycle out = c;
  LocalSearch(graph).swap_pass(out, k, l);
  return out;
}

Cycle cvnd(const SelfDeletingGraph& graph, const Cycle& c,
           const std::vector<OperatorDescriptor>& schedule,
           const Deadline& deadline) {
  Cycle out = c;
  LocalSearch(graph).cvnd(out, schedule, deadline);
  return out;
}

namespace {

class BackwardDfs {
 public:
  BackwardDfs(const SelfDeletingGraph& graph, const std::vector<int>* guide,
              const GraspParams& params, Rng& rng, const Deadline& deadline)
      : graph_(graph),
        guide_(guide),
        rcl_(std::max(1, params.rcl_size)),
        rng_(rng),
        deadline_(deadline) {
    const int n = graph.size();
    cap_ = params.construction_expansion_cap > 0
               ? params.construction_expansion_cap
               : 100000 + 400LL * n * n;
    order_.assign(static_cast<std::size_t>(n), -1);
    used_.assign(static_cast<std::size_t>(n), 0);
    if (guide_) {
      guide_pos_.assign(static_cast<std::size_t>(n), -1);
      for (int p = 0; p < n; ++p)
        guide_pos_[static_cast<std::size_t>((*guide_)[static_cast<std::size_t>(p)])] = p;
      reserved_ = (*guide_)[0];
    }
  }

  ConstructionResult run() {
    const int n = graph_.size();
    if (fill(n - 1))
      return {ConstructionStatus::Found, make_cycle(graph_, order_)};
    return {limit_hit_ ? ConstructionStatus::Limit
                       : ConstructionStatus::Exhausted,
            std::nullopt};
  }

 private:
  bool over_limit() {
    if (limit_hit_) return true;
    if (++expansions_ > cap_) return limit_hit_ = true;
    if ((expansions_ & 0xff) == 0 && deadline_expired(deadline_))
      return limit_hit_ = true;
    return false;
  }

  // Edge (v -> succ) survives iff every deleter already sits in the suffix.
  bool admissible(int v, int succ) const {
    for (const int d : graph_.deleters(v, succ))
      if (!used_[static_cast<std::size_t>(d)]) return false;
    return true;
  }

  bool fill(int pos) {
    const int n = graph_.size();
    if (pos == 0) {
      int v = reserved_;
      if (v < 0) {
        for (int u = 0; u < n; ++u)
          if (!used_[static_cast<std::size_t>(u)]) v = u;
      }
      if (over_limit()) return false;
      if (!admissible(v, order_[1])) return false;
      if (!graph_.deleters(order_[static_cast<std::size_t>(n - 1)], v).empty())
        return false;  // closing edge must survive processing every node
      order_[0] = v;
      return true;
    }

    const int succ = pos == n - 1 ? -1 : order_[static_cast<std::size_t>(pos + 1)];
    std::vector<int> cands;
    cands.reserve(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      if (used_[static_cast<std::size_t>(v)] || v == reserved_) continue;
      if (succ >= 0 && !admissible(v, succ)) continue;
      cands.push_back(v);
    }
    int preferred = -1;
    if (guide_) {
      const int want =
          succ < 0 ? (*guide_)[static_cast<std::size_t>(n - 1)]
                   : (*guide_)[static_cast<std::size_t>(
                         (guide_pos_[static_cast<std::size_t>(succ)] + n - 1) % n)];
      const auto it = std::find(cands.begin(), cands.end(), want);
      if (it != cands.end()) {
        preferred = want;
        cands.erase(it);
      }
    }
    if (succ >= 0) {
      std::sort(cands.begin(), cands.end(), [&](int a, int b) {
        const double wa = graph_.weight(a, succ), wb = graph_.weight(b, succ);
        return wa != wb ? wa < wb : a < b;
      });
      // Semi-greedy: draw repeatedly from the rcl best remaining.
      for (std::size_t head = 0; head + 1 < cands.size(); ++head) {
        const std::size_t span =
            std::min<std::size_t>(static_cast<std::size_t>(rcl_),
                                  cands.size() - head);
        std::swap(cands[head], cands[head + rng_below(rng_, span)]);
      }
    } else {
      rng_shuffle(rng_, cands);  // expansion starts from a random node
    }
    if (preferred >= 0) cands.insert(cands.begin(), preferred);

    for (const int v : cands) {
      if (over_limit()) return false;
      order_[static_cast<std::size_t>(pos)] = v;
      used_[static_cast<std::size_t>(v)] = 1;
      if (fill(pos - 1)) return true;
      used_[static_cast<std::size_t>(v)] = 0;
      if (limit_hit_) return false;
    }
    return false;
  }

  const SelfDeletingGraph& graph_;
  const std::vector<int>* guide_;
  int rcl_;
  Rng& rng_;
  Deadline deadline_;
  std::int64_t cap_ = 0;
  std::int64_t expansions_ = 0;
  bool limit_hit_ = false;
  int reserved_ = -1;
  std::vector<int> order_;
  std::vector<char> used_;
  std::vector<int> guide_pos_;
};

}  // namespace

ConstructionResult backward_search(const SelfDeletingGraph& graph,
                                   const std::vector<int>* guide,
                                   const GraspParams& params, Rng& rng,
                                   const Deadline& deadline) {
  if (guide) check_permutation(graph, *guide);
  return BackwardDfs(graph, guide, params, rng, deadline).run();
}

GraspReport grasp(const SelfDeletingGraph& graph,
                  const std::vector<int>* guide, const GraspParams& params) {
  Rng rng(params.rng_seed);
  const auto start = Clock::now();
  Deadline overall;
  if (params.stop.time_budget_s > 0.0)
    overall = start + std::chrono::duration_cast<Clock::duration>(
                          std::chrono::duration<double>(params.stop.time_budget_s));

  GraspReport report;
  LocalSearch search(graph);
  const auto schedule = make_schedule(params);
  while (true) {
    if (params.stop.max_iterations > 0 &&
        report.iterations >= params.stop.max_iterations)
      break;
    if (deadline_expired(overall)) break;
    ++report.iterations;

    Deadline attempt;
    if (overall)
      attempt = sooner(overall,
                       Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                          std::chrono::duration<double>(
                                              params.construction_time_limit_s)));
    auto built = backward_search(graph, guide, params, rng, attempt);
    if (built.status == ConstructionStatus::Found) {
      Cycle c = std::move(*built.cycle);
      search.cvnd(c, schedule, overall);
      if (!report.best || c.cost < report.best->cost) report.best = std::move(c);
    } else {
      ++report.constructions_failed;
      if (built.status == ConstructionStatus::Exhausted) {
        report.proven_infeasible = !report.best && guide == nullptr;
        break;
      }
      if (!report.best &&
          report.constructions_failed >= params.construction_attempts)
        break;
    }
  }
  return report;
}

}  // namespace tspcp
