#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "support.hpp"
#include "tspcp/sdgraph.hpp"

using namespace tspcp;
using namespace tspcp::testing;

namespace {

// Complete 3-node graph, unit weights, f(0) = {(1,2)}.
RawInstance three_node_example() {
  RawInstance inst;
  inst.n = 3;
  inst.weight = {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  inst.deletions = {{0, 1, 2}};
  return inst;
}

}  // namespace

TEST_CASE("residual membership follows the deleter sets") {
  const auto g = to_graph(three_node_example());
  NodeSetAccumulator x(g);
  CHECK(residual_contains(g, x, {1, 2}));  // empty set deletes nothing
  x.add(0);
  CHECK_FALSE(residual_contains(g, x, {1, 2}));
  x.clear();
  x.add(1);
  x.add(2);
  CHECK(residual_contains(g, x, {1, 2}));  // only node 0 deletes (1,2)
  CHECK_THROWS_AS(residual_contains(g, x, {0, 7}), std::invalid_argument);
}

TEST_CASE("residual membership matches a naive scan on random queries") {
  Rng rng(5);
  for (int round = 0; round < 10; ++round) {
    const auto inst = random_euclidean_instance(20, 6, rng);
    const auto g = to_graph(inst);
    NodeSetAccumulator x(g);
    std::vector<char> in_set(20, 0);
    for (int q = 0; q < 1000; ++q) {
      const int v = static_cast<int>(rng_below(rng, 20));
      if (rng_unit(rng) < 0.5) {
        x.add(v);
        in_set[static_cast<std::size_t>(v)] = 1;
      } else {
        x.remove(v);
        in_set[static_cast<std::size_t>(v)] = 0;
      }
      int a = static_cast<int>(rng_below(rng, 20));
      int b = static_cast<int>(rng_below(rng, 20));
      if (a == b) b = (b + 1) % 20;
      bool naive = true;
      for (const auto& [dv, df, dt] : inst.deletions)
        if (df == a && dt == b && in_set[static_cast<std::size_t>(dv)])
          naive = false;
      CHECK(residual_contains(g, x, {a, b}) == naive);
    }
  }
}

TEST_CASE("conformance on the 3-node example") {
  const auto g = to_graph(three_node_example());
  CHECK_FALSE(is_f_conforming(g, {0, 1, 2}));  // (1,2) deleted by processed 0
  CHECK(is_f_conforming(g, {1, 2, 0}));
  CHECK_THROWS_AS(is_f_conforming(g, {0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(is_f_conforming(g, {0, 1}), std::invalid_argument);
}

TEST_CASE("empty delete function reduces to plain feasibility, exhaustively") {
  for (int n = 3; n <= 7; ++n) {
    Rng rng(static_cast<std::uint64_t>(n));
    auto inst = random_euclidean_instance(n, 0, rng);
    const auto g = to_graph(inst);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    do {
      CHECK(is_f_conforming(g, order));
    } while (std::next_permutation(order.begin(), order.end()));
  }
}

TEST_CASE("conformance is order sensitive and matches the scratch oracle") {
  Rng rng(17);
  for (int round = 0; round < 30; ++round) {
    const auto inst = random_euclidean_instance(12, 4, rng);
    const auto g = to_graph(inst);
    std::vector<int> order(12);
    std::iota(order.begin(), order.end(), 0);
    for (int shuffle = 0; shuffle < 40; ++shuffle) {
      rng_shuffle(rng, order);
      CHECK(is_f_conforming(g, order) == oracle_conforming(inst, order));
    }
  }
}

TEST_CASE("cycle cost includes the closing edge") {
  Rng rng(3);
  auto square = random_euclidean_instance(4, 0, rng);
  square.points = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      square.weight[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          distance(square.points[static_cast<std::size_t>(i)],
                   square.points[static_cast<std::size_t>(j)]);
  const auto g = to_graph(square);
  CHECK(cycle_cost(g, {0, 1, 2, 3}) == doctest::Approx(4.0));
  // Swapping two adjacent corners introduces two diagonals.
  CHECK(cycle_cost(g, {0, 2, 1, 3}) ==
        doctest::Approx(2.0 + 2.0 * std::sqrt(2.0)));

  const SelfDeletingGraph pair(2, {0.0, 3.0, 3.0, 0.0});
  CHECK(cycle_cost(pair, {0, 1}) == doctest::Approx(6.0));
}

TEST_CASE("make_cycle caches a cost that matches recomputation") {
  Rng rng(11);
  const auto inst = random_euclidean_instance(15, 3, rng);
  const auto g = to_graph(inst);
  std::vector<int> order(15);
  std::iota(order.begin(), order.end(), 0);
  rng_shuffle(rng, order);
  const auto c = make_cycle(g, order);
  CHECK(std::abs(c.cost - cycle_cost(g, c.order)) < 1e-9);
  CHECK(std::abs(c.cost - oracle_cost(inst, c.order)) < 1e-9);
}

TEST_CASE("accumulator edge counters track prefix deleters") {
  const auto inst = three_node_example();
  const auto g = to_graph(inst);
  NodeSetAccumulator acc(g);
  acc.add(0);
  acc.add(1);
  CHECK(acc.register_edge(1, 2) == 1);
  CHECK(acc.dirty_edges() == 1);
  acc.remove(0);
  CHECK(acc.hits(1, 2) == 0);
  CHECK(acc.dirty_edges() == 0);
  acc.add(0);
  CHECK(acc.dirty_edges() == 1);
  acc.unregister_all();
  CHECK(acc.dirty_edges() == 0);
}

TEST_CASE("graph validates construction inputs") {
  CHECK_THROWS_AS(SelfDeletingGraph(2, {0.0, -1.0, 1.0, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SelfDeletingGraph(2, {0.0, 1.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SelfDeletingGraph(2, {0.0, 1.0, 1.0, 0.0}, {{0, 1, 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SelfDeletingGraph(2, {0.0, 1.0, 1.0, 0.0}, {{5, 0, 1}}),
                  std::invalid_argument);
}

TEST_CASE("average deletions per node") {
  const auto g = to_graph(three_node_example());
  CHECK(g.avg_deletions_per_node() == doctest::Approx(1.0 / 3.0));
}
