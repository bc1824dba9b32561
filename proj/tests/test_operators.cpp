#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "support.hpp"
#include "tspcp/tspsd.hpp"

using namespace tspcp;
using namespace tspcp::testing;

namespace {

RawInstance collinear_instance(std::vector<double> xs) {
  RawInstance inst;
  inst.n = static_cast<int>(xs.size());
  for (const double x : xs) inst.points.push_back({x, 0.0});
  inst.weight.assign(static_cast<std::size_t>(inst.n),
                     std::vector<double>(static_cast<std::size_t>(inst.n), 0));
  for (int i = 0; i < inst.n; ++i)
    for (int j = 0; j < inst.n; ++j)
      inst.weight[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          std::abs(xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(j)]);
  return inst;
}

std::vector<int> candidate_order(const OperatorDescriptor& op,
                                 const std::vector<int>& order, int i, int j) {
  switch (op.kind) {
    case OperatorDescriptor::Kind::TwoOpt:
      return apply_two_opt(order, i, j);
    case OperatorDescriptor::Kind::MoveRight:
      return apply_move(order, i, j, op.a, true);
    case OperatorDescriptor::Kind::MoveLeft:
      return apply_move(order, i, j, op.a, false);
    case OperatorDescriptor::Kind::SwapAsym:
      return apply_swap(order, i, j, op.a, op.b);
  }
  return order;
}

// Runs one pass with the audit hook installed and cross-checks every scanned
// candidate against the from-scratch oracle. Returns the number of audited
// pairs.
int audited_pass(const RawInstance& inst, const SelfDeletingGraph& g,
                 Cycle& cycle, const OperatorDescriptor& op,
                 int* adjacent_swaps = nullptr) {
  LocalSearch search(g);
  const std::vector<int> input = cycle.order;
  const double input_cost = oracle_cost(inst, input);
  int events = 0;
  search.audit = [&](const OperatorDescriptor& active, int i, int j,
                     bool feasible, double delta) {
    ++events;
    const auto cand = candidate_order(active, input, i, j);
    REQUIRE(oracle_conforming(inst, cand) == feasible);
    REQUIRE(std::abs((oracle_cost(inst, cand) - input_cost) - delta) <= 1e-9);
    if (adjacent_swaps && active.kind == OperatorDescriptor::Kind::SwapAsym &&
        i + active.a == j)
      ++*adjacent_swaps;
  };
  const bool improved = search.run_operator(cycle, op);
  REQUIRE(is_f_conforming(g, cycle.order));
  REQUIRE(std::abs(cycle.cost - cycle_cost(g, cycle.order)) <= 1e-9);
  REQUIRE(cycle.order.front() == input.front());
  REQUIRE(cycle.order.back() == input.back());
  if (improved)
    REQUIRE(cycle.cost < input_cost - 1e-9);
  else
    REQUIRE(cycle.order == input);
  return events;
}

Cycle conforming_start(const RawInstance& inst, const SelfDeletingGraph& g,
                       std::uint64_t seed) {
  GraspParams params;
  params.rng_seed = seed;
  Rng rng(seed);
  const auto res = backward_search(g, nullptr, params, rng, {});
  REQUIRE(res.status == ConstructionStatus::Found);
  REQUIRE(oracle_conforming(inst, res.cycle->order));
  return *res.cycle;
}

}  // namespace

TEST_CASE("two-opt sorts a collinear detour") {
  auto inst = collinear_instance({0, 2, 1, 3});
  const auto g = to_graph(inst);
  auto c = make_cycle(g, {0, 1, 2, 3});
  CHECK(c.cost == doctest::Approx(8.0));
  LocalSearch search(g);
  CHECK(search.two_opt_pass(c));
  CHECK(c.order == std::vector<int>{0, 2, 1, 3});  // geometric order 0,1,2,3
  CHECK(c.cost == doctest::Approx(6.0));
  CHECK_FALSE(search.two_opt_pass(c));
}

TEST_CASE("two-opt is blocked when the prefix deletes the inverted edge") {
  auto inst = collinear_instance({0, 2, 1, 3});
  // The improving inversion adds the directed edge (node2 -> node1); node 0
  // sits in the prefix and deletes it.
  inst.deletions = {{0, 2, 1}};
  const auto g = to_graph(inst);
  auto c = make_cycle(g, {0, 1, 2, 3});
  LocalSearch search(g);
  CHECK_FALSE(search.two_opt_pass(c));
  CHECK(c.order == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("operator passes reject non-conforming input") {
  auto inst = collinear_instance({0, 1, 2, 3});
  inst.deletions = {{0, 1, 2}};
  const auto g = to_graph(inst);
  Cycle bad{{0, 1, 2, 3}, cycle_cost(g, {0, 1, 2, 3})};
  LocalSearch search(g);
  CHECK_THROWS_AS(search.two_opt_pass(bad), std::logic_error);
  CHECK_THROWS_AS(search.move_pass(bad, 1, true), std::logic_error);
  CHECK_THROWS_AS(search.swap_pass(bad, 1, 1), std::logic_error);
}

TEST_CASE("two-opt with no deletions matches a textbook directed scan") {
  Rng rng(2);
  for (int round = 0; round < 20; ++round) {
    const auto inst = random_euclidean_instance(30, 0, rng);
    const auto g = to_graph(inst);
    std::vector<int> order(30);
    std::iota(order.begin(), order.end(), 0);
    rng_shuffle(rng, order);
    auto c = make_cycle(g, order);

    // Scratch first-improvement directed 2-opt with fixed endpoints.
    std::vector<int> expect = order;
    bool found = false;
    for (int j = 29 - 1; j >= 2 && !found; --j)
      for (int i = j - 1; i >= 1 && !found; --i) {
        const auto cand = apply_two_opt(expect, i, j);
        if (oracle_cost(inst, cand) < oracle_cost(inst, expect) - 1e-9) {
          expect = cand;
          found = true;
        }
      }

    LocalSearch search(g);
    search.two_opt_pass(c);
    CHECK(c.order == expect);
  }
}

TEST_CASE("move relocates an improving block") {
  const auto inst = collinear_instance({0, 5, 1, 2});
  const auto g = to_graph(inst);
  auto c = make_cycle(g, {0, 1, 2, 3});
  CHECK(c.cost == doctest::Approx(12.0));
  LocalSearch search(g);
  CHECK(search.move_pass(c, 1, true));
  CHECK(c.order == std::vector<int>{0, 2, 1, 3});
  CHECK(c.cost == doctest::Approx(10.0));

  // Verify against an exhaustive enumeration of all single-node relocations.
  double best_enum = 12.0;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      if (i == j) continue;
      auto cand = std::vector<int>{0, 1, 2, 3};
      const int node = cand[static_cast<std::size_t>(i)];
      cand.erase(cand.begin() + i);
      cand.insert(cand.begin() + j, node);
      best_enum = std::min(best_enum, oracle_cost(inst, cand));
    }
  CHECK(c.cost == doctest::Approx(best_enum));
}

TEST_CASE("move is blocked when the bridge edge is deleted by the prefix") {
  auto inst = collinear_instance({0, 5, 1, 2});
  // The only improving relocation bridges (node0 -> node2); node 0 is the
  // whole prefix there, so deleting that edge kills the move.
  inst.deletions = {{0, 0, 2}};
  const auto g = to_graph(inst);
  auto c = make_cycle(g, {0, 1, 2, 3});
  LocalSearch search(g);
  CHECK_FALSE(search.move_pass(c, 1, true));
  CHECK(c.order == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("move with no deletions matches a scratch relocation oracle") {
  Rng rng(4);
  for (int round = 0; round < 20; ++round) {
    const auto inst = random_euclidean_instance(30, 0, rng);
    const auto g = to_graph(inst);
    std::vector<int> order(30);
    std::iota(order.begin(), order.end(), 0);
    rng_shuffle(rng, order);

    for (const int m : {1, 2, 3}) {
      auto c = make_cycle(g, order);
      // Scratch first-improvement relocation in the same scan order.
      std::vector<int> expect = order;
      bool found = false;
      for (int i = 1; i + m <= 28 && !found; ++i)
        for (int j = i + m; j <= 28 && !found; ++j) {
          const auto cand = apply_move(expect, i, j, m, true);
          if (oracle_cost(inst, cand) < oracle_cost(inst, expect) - 1e-9) {
            expect = cand;
            found = true;
          }
        }
      LocalSearch search(g);
      search.move_pass(c, m, true);
      CHECK(c.order == expect);
    }
  }
}

TEST_CASE("interior block swap improves and matches enumeration") {
  // Positions 1 and 2 hold nodes in the wrong geometric order.
  const auto inst = collinear_instance({0, 3, 1, 4});
  const auto g = to_graph(inst);
  auto c = make_cycle(g, {0, 1, 2, 3});
  LocalSearch search(g);
  CHECK(search.swap_pass(c, 1, 1));
  CHECK(c.order == std::vector<int>{0, 2, 1, 3});
  CHECK(c.cost < 12.0);
}

TEST_CASE("swap rejects a block whose edges the jumped-over nodes delete") {
  auto inst = collinear_instance({0, 6, 7, 3, 4, 1, 9});
  // Node 3 sits between the blocks of the (1,4) swap and deletes the moved
  // block's internal edge (1 -> 2), so that candidate must be infeasible.
  inst.deletions = {{3, 1, 2}};
  const auto g = to_graph(inst);
  Cycle c = make_cycle(g, {0, 1, 2, 3, 4, 5, 6});
  REQUIRE(is_f_conforming(g, c.order));
  LocalSearch search(g);
  bool saw_blocked_pair = false;
  search.audit = [&](const OperatorDescriptor& op, int i, int j, bool feasible,
                     double) {
    if (op.a == 2 && op.b == 2 && i == 1 && j == 4) {
      saw_blocked_pair = true;
      CHECK_FALSE(feasible);
    }
  };
  search.swap_pass(c, 2, 2);
  CHECK(saw_blocked_pair);
}

TEST_CASE("oracle equivalence for every scanned pair on random instances") {
  GraspParams defaults;
  int adjacent_swaps = 0;
  for (const int fbar : {2, 8}) {
    Rng rng(1000 + static_cast<std::uint64_t>(fbar));
    for (int round = 0; round < 25; ++round) {
      const auto inst = random_euclidean_instance(30, fbar, rng);
      const auto g = to_graph(inst);
      const Cycle start = conforming_start(inst, g, rng());

      {
        Cycle c = start;
        audited_pass(inst, g, c, {OperatorDescriptor::Kind::TwoOpt, 0, 0});
      }
      for (const int m : defaults.move_lengths) {
        Cycle c = start;
        audited_pass(inst, g, c, {OperatorDescriptor::Kind::MoveRight, m, 0});
        c = start;
        audited_pass(inst, g, c, {OperatorDescriptor::Kind::MoveLeft, m, 0});
      }
      for (const auto& [k, l] : defaults.swap_length_pairs) {
        Cycle c = start;
        audited_pass(inst, g, c, {OperatorDescriptor::Kind::SwapAsym, k, l},
                     &adjacent_swaps);
      }
    }
  }
  CHECK(adjacent_swaps > 0);  // the e2 == e3 branch was exercised
}

TEST_CASE("adjacent-block swap branch validated on a small path instance") {
  Rng rng(77);
  for (int round = 0; round < 50; ++round) {
    const auto inst = random_euclidean_instance(6, 3, rng);
    const auto g = to_graph(inst);
    std::vector<int> order(6);
    std::iota(order.begin(), order.end(), 0);
    if (!oracle_conforming(inst, order)) continue;
    Cycle c = make_cycle(g, order);
    int adjacent = 0;
    audited_pass(inst, g, c, {OperatorDescriptor::Kind::SwapAsym, 1, 2},
                 &adjacent);
  }
}

TEST_CASE("cvnd reaches a fixpoint of all neighborhoods") {
  GraspParams defaults;
  const auto schedule = make_schedule(defaults);
  Rng rng(6);
  for (int round = 0; round < 10; ++round) {
    const auto inst = random_euclidean_instance(8, 0, rng);
    const auto g = to_graph(inst);
    std::vector<int> order(8);
    std::iota(order.begin(), order.end(), 0);
    rng_shuffle(rng, order);
    Cycle c = make_cycle(g, order);
    const double start_cost = c.cost;

    LocalSearch search(g);
    std::vector<double> improvements;
    search.cvnd(c, schedule);
    CHECK(c.cost <= start_cost + 1e-12);
    CHECK(is_f_conforming(g, c.order));

    // Exhaustive scan: no operator move may improve the result.
    auto no_improvement = [&](const OperatorDescriptor& op) {
      LocalSearch probe(g);
      Cycle copy = c;
      const bool improved = probe.run_operator(copy, op);
      CHECK_FALSE(improved);
    };
    for (const auto& op : schedule) no_improvement(op);

    // A locally optimal input passes through unchanged.
    Cycle again = c;
    search.cvnd(again, schedule);
    CHECK(again.order == c.order);
  }
}

TEST_CASE("cvnd cost trace decreases strictly at every improvement") {
  Rng rng(8);
  const auto inst = random_euclidean_instance(25, 3, rng);
  const auto g = to_graph(inst);
  Cycle c = conforming_start(inst, g, 99);
  GraspParams defaults;
  LocalSearch search(g);
  double last = c.cost;
  bool monotone = true;
  // Re-run pass-by-pass to observe each improvement.
  const auto schedule = make_schedule(defaults);
  std::size_t idx = 0, misses = 0;
  while (misses < schedule.size()) {
    if (search.run_operator(c, schedule[idx])) {
      monotone = monotone && c.cost < last - 1e-9;
      last = c.cost;
      idx = 0;
      misses = 0;
    } else {
      idx = (idx + 1) % schedule.size();
      ++misses;
    }
  }
  CHECK(monotone);
}
