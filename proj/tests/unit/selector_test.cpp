#include <random>

#include "../fixtures.hpp"
#include "doctest.h"
#include "kvd/selector.hpp"

using namespace kvd;

TEST_SUITE("selector") {

TEST_CASE("band is open on both sides") {
  CHECK_FALSE(within_band(140, 190, 50));
  CHECK(within_band(141, 190, 50));
  CHECK(within_band(239, 190, 50));
  CHECK_FALSE(within_band(240, 190, 50));
}

TEST_CASE("knapsack matches exhaustive search") {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::size_t> count(0, 11), len(1, 60);
  std::uniform_real_distribution<double> score(0.0, 3.0);
  std::uniform_int_distribution<int> coarse(0, 3);
  for (int round = 0; round < 400; ++round) {
    const std::size_t n = count(rng);
    std::vector<std::size_t> lengths(n);
    std::vector<double> scores(n);
    const bool ties = round % 2 == 0;
    for (std::size_t i = 0; i < n; ++i) {
      lengths[i] = len(rng);
      scores[i] = ties ? static_cast<double>(coarse(rng)) : score(rng);
    }
    const std::size_t budget = 60 + round % 60, sigma = 5 + round % 20;
    const auto got = knapsack_select(lengths, scores, budget, sigma);
    const auto want = test::knapsack_oracle(lengths, scores, budget, sigma);
    CHECK(got.infeasible == !want.score.has_value());
    if (!want.score) continue;
    CHECK(got.score == doctest::Approx(*want.score));
    CHECK(got.tokens == want.total);
    CHECK(got.ids == want.ids);
    CHECK_FALSE(got.out_of_band);
  }
}

TEST_CASE("knapsack falls back under the upper bound when the band is unreachable") {
  const auto s = knapsack_select({300, 20, 30}, {5.0, 1.0, 2.0}, 190, 50);
  CHECK(s.infeasible);
  CHECK(s.ids == std::vector<std::size_t>{1, 2});
  CHECK(s.tokens == 50);
  CHECK(s.out_of_band);
}

TEST_CASE("greedy stops once the budget is reached") {
  const auto s = greedy_select({3.0, 2.0, 1.0}, {100, 100, 100}, 190, 50);
  CHECK(s.ids == std::vector<std::size_t>{0, 1});
  CHECK(s.tokens == 200);
  CHECK_FALSE(s.out_of_band);
  const auto over = greedy_select({3.0, 2.0, 1.0}, {300, 10, 10}, 190, 50);
  CHECK(over.ids == std::vector<std::size_t>{0});
  CHECK(over.out_of_band);
}

TEST_CASE("oracle selection gains reference n-grams") {
  const std::vector<std::vector<std::string>> sentences{{"cells", "grow", "fast"}, {"we", "used", "mice"},
                                                        {"cells", "grow", "slowly"}};
  const auto s = oracle_select(sentences, {"cells", "grow", "fast"}, 3, 1);
  CHECK(s.ids == std::vector<std::size_t>{0});
}

TEST_CASE("sentence scores sum propositions") {
  const auto doc = test::build_fixture(3, {{1, "a", {}, 0, 0}, {2, "b", {}, 0, 0}, {3, "c", {}, 2, 0}}, {});
  CHECK(sentence_scores_from_propositions(doc, 3, {1.0, 2.0, 4.0}) == std::vector<double>{3.0, 0.0, 4.0});
}

}
