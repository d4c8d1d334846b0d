#include <cmath>
#include <random>
#include <set>

#include "../fixtures.hpp"
#include "doctest.h"
#include "kvd/memory.hpp"

using namespace kvd;

namespace {

std::vector<PropId> iota_ids(std::size_t n, PropId first = 0) {
  std::vector<PropId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = first + static_cast<PropId>(i);
  return ids;
}

// Root of highest closeness by direct BFS from every node, ties to the highest id.
PropId brute_root(const MemoryTree& tree) {
  PropId best = tree.root();
  std::size_t best_sum = 0;
  bool first = true;
  for (PropId v : tree.nodes()) {
    std::size_t sum = 0;
    for (const auto& [_, d] : test::bfs_distances(tree.adjacency(), v)) sum += d;
    // n - 1 is shared, so a smaller distance sum means higher closeness.
    if (first || sum <= best_sum) {
      best = v;
      best_sum = sum;
      first = false;
    }
  }
  return best;
}

// 0 -> 1, 2; 1 -> 3, 4; 2 -> 5; 3 -> 6
MemoryTree binary_tree() {
  return MemoryTree(iota_ids(7), {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {3, 6}}, 0);
}

std::set<PropId> node_set(const MemoryTree& t) {
  const auto n = t.nodes();
  return {n.begin(), n.end()};
}

}  // namespace

TEST_SUITE("memory") {

TEST_CASE("tree construction validates shape") {
  CHECK_NOTHROW(binary_tree());
  CHECK_THROWS_AS(MemoryTree({0, 1, 2}, {{0, 1}}, 0), std::invalid_argument);
  CHECK_THROWS_AS(MemoryTree({0, 1, 2}, {{0, 1}, {1, 2}, {2, 0}}, 0), std::invalid_argument);
  CHECK_THROWS_AS(MemoryTree({0, 1}, {{0, 1}}, 5), std::invalid_argument);
  const MemoryTree t = binary_tree();
  CHECK(t.depths().at(6) == 4);
  CHECK(t.subtree_sizes().at(1) == 4);
  CHECK(t.parents().at(5) == 2);
  CHECK(t.children().at(1) == std::vector<PropId>{3, 4});
  CHECK(t.directed_edges().size() == 6);
}

TEST_CASE("closeness on a path") {
  Adjacency path{{0, {1}}, {1, {0, 2}}, {2, {1}}};
  CHECK(closeness_ratio(path, 1) == std::pair<std::size_t, std::size_t>{2, 2});
  CHECK(closeness_centrality(path, 0) == doctest::Approx(2.0 / 3.0));
  CHECK(closeness_centrality(Adjacency{{4, {}}}, 4) == 0.0);
  CHECK(closeness_greater({2, 2}, {2, 3}));
  CHECK_FALSE(closeness_greater({2, 3}, {2, 3}));
  CHECK_FALSE(closeness_greater({0, 0}, {2, 3}));
  CHECK(closeness_greater({1, 1}, {0, 0}));
}

TEST_CASE("adjust_root matches brute-force closeness on random trees") {
  std::mt19937_64 rng(21);
  for (std::size_t n = 1; n <= 8; ++n)
    for (int round = 0; round < 60; ++round) {
      MemoryTree t = test::random_tree(iota_ids(n, 10), rng);
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      t.set_root(t.nodes()[pick(rng)]);
      const MemoryTree r = adjust_root(t);
      CHECK(r.root() == brute_root(t));
      CHECK(r.adjacency() == t.adjacency());
    }
}

TEST_CASE("adjust_root breaks ties toward the highest id") {
  const MemoryTree t({3, 4}, {{3, 4}}, 3);
  CHECK(adjust_root(t).root() == 4);
}

TEST_CASE("memory_select follows the largest subtree, then fills breadth-first") {
  const MemoryTree t = binary_tree();
  const Selection four = memory_select(4, t);
  CHECK(node_set(four.kept) == std::set<PropId>{0, 1, 3, 6});
  CHECK(four.kept.root() == 0);
  REQUIRE(four.pruned.size() == 2);
  CHECK(node_set(four.pruned[0]) == std::set<PropId>{2, 5});
  CHECK(four.pruned[0].root() == 2);
  CHECK(node_set(four.pruned[1]) == std::set<PropId>{4});

  const Selection five = memory_select(5, t);
  CHECK(node_set(five.kept) == std::set<PropId>{0, 1, 2, 3, 6});

  const Selection all = memory_select(10, t);
  CHECK(all.kept == t);
  CHECK(all.pruned.empty());
  CHECK_THROWS(memory_select(0, t));
}

TEST_CASE("memory_select prefers the newest child on equal subtrees") {
  const MemoryTree t({0, 1, 2}, {{0, 1}, {0, 2}}, 0);
  CHECK(node_set(memory_select(2, t).kept) == std::set<PropId>{0, 2});
}

TEST_CASE("memory_select partitions random trees into a rooted kept part and maximal fragments") {
  std::mt19937_64 rng(8);
  for (int round = 0; round < 200; ++round) {
    std::uniform_int_distribution<std::size_t> size(1, 12);
    const std::size_t n = size(rng);
    const MemoryTree t = test::random_tree(iota_ids(n), rng);
    std::uniform_int_distribution<std::size_t> cap(1, n + 2);
    const std::size_t wm = cap(rng);
    const Selection s = memory_select(wm, t);
    CHECK(s.kept.size() == std::min(wm, n));
    CHECK(s.kept.root() == t.root());
    CHECK(s.kept.is_valid());
    std::set<PropId> seen = node_set(s.kept);
    const auto parent = t.parents();
    PropId last_root = 0;
    for (std::size_t i = 0; i < s.pruned.size(); ++i) {
      const auto& f = s.pruned[i];
      CHECK(f.is_valid());
      CHECK(s.kept.contains(parent.at(f.root())));
      if (i > 0) CHECK(f.root() > last_root);
      last_root = f.root();
      for (PropId v : f.nodes()) CHECK(seen.insert(v).second);
      CHECK(f.size() == t.subtree_sizes().at(f.root()));
    }
    CHECK(seen.size() == n);
  }
}

TEST_CASE("reading example first cycle keeps 2, 3, 4, 5, 7") {
  const auto doc = test::reading_cycles_fixture();
  const MemoryTree t = adjust_root(MemoryTree::from_proposition_tree(doc.trees.at(0)));
  CHECK(t.root() == test::internal(4));
  const Selection s = memory_select(5, t);
  CHECK(test::displayed(s.kept.nodes()) == std::set<PropId>{2, 3, 4, 5, 7});
}

TEST_CASE("node importance values") {
  CHECK(node_importance(3, MemoryTree({3}, {}, 3)) == doctest::Approx(std::exp(1.0)));
  // root 0; 1 carries 2..5 as leaves; 6..9 hang off the root
  const MemoryTree t(iota_ids(10), {{0, 1}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {0, 6}, {0, 7}, {0, 8}, {0, 9}}, 0);
  CHECK(node_importance(1, t) == doctest::Approx(0.82436).epsilon(1e-5));
  CHECK(node_importance(2, t) == doctest::Approx(0.13956).epsilon(1e-4));
  const auto tree = importance(t, ScoringStrategy::Tree);
  for (PropId v = 0; v < 10; ++v) CHECK(tree.at(v) == doctest::Approx(node_importance(v, t)));
  for (const auto& [_, v] : importance(t, ScoringStrategy::Freq)) CHECK(v == 1.0);
}

TEST_CASE("eigenvector centrality matches a Jacobi solve") {
  std::mt19937_64 rng(4);
  for (std::size_t n = 2; n <= 8; ++n)
    for (int round = 0; round < 20; ++round) {
      const MemoryTree t = test::random_tree(iota_ids(n), rng);
      std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
      for (const auto& [u, v] : t.edges()) a[u][v] = a[v][u] = 1.0;
      const auto want = test::principal_eigenvector(a);
      const auto got = eigenvector_centrality(t);
      for (std::size_t i = 0; i < n; ++i) CHECK(got.at(static_cast<PropId>(i)) == doctest::Approx(want[i]).epsilon(1e-6));
    }
  CHECK(eigenvector_centrality(MemoryTree({5}, {}, 5)).at(5) == 1.0);
}

TEST_CASE("score table accumulates non-negative increments") {
  ScoreTable table(3);
  const MemoryTree t({0, 2}, {{0, 2}}, 0);
  const auto inc = update_scores(t, table, ScoringStrategy::Freq);
  CHECK(inc.size() == 2);
  CHECK(table[0] == 1.0);
  CHECK(table[1] == 0.0);
  CHECK(table.total() == 2.0);
  CHECK_THROWS(table.add(0, -1.0));
}

TEST_CASE("simulation parameters validate") {
  SimulationParams p;
  CHECK_NOTHROW(p.validate());
  p.gamma = 1.0;
  CHECK_THROWS(p.validate());
  p = {};
  p.wm = 0;
  CHECK_THROWS(p.validate());
  CHECK(parse_scoring("eigen") == ScoringStrategy::Eigen);
  CHECK_FALSE(parse_scoring("pagerank").has_value());
}

}
