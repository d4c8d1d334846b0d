#include <random>

#include "../fixtures.hpp"
#include "doctest.h"
#include "kvd/baselines.hpp"
#include "kvd/overlap.hpp"

using namespace kvd;

TEST_SUITE("baselines") {

TEST_CASE("pagerank matches the linear-system solution") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> w(0.1, 2.0);
  std::bernoulli_distribution coin(0.35);
  for (std::size_t n = 1; n <= 9; ++n)
    for (int round = 0; round < 10; ++round) {
      baselines::EdgeList edges;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (coin(rng)) edges.emplace_back(i, j, w(rng));
      baselines::PageRankOptions opt;
      opt.tolerance = 1e-13;
      opt.max_iterations = 2000;
      const auto got = baselines::pagerank(n, edges, opt);
      const auto want = test::pagerank_oracle(n, edges);
      CHECK(got.converged);
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(got.scores[i] == doctest::Approx(want[i]).epsilon(1e-8));
        total += got.scores[i];
      }
      CHECK(total == doctest::Approx(1.0));

      std::vector<double> dense(n * n, 0.0);
      for (const auto& [u, v, x] : edges) dense[u * n + v] = dense[v * n + u] = x;
      const auto d = baselines::pagerank_dense(n, dense, opt);
      for (std::size_t i = 0; i < n; ++i) CHECK(d.scores[i] == doctest::Approx(got.scores[i]).epsilon(1e-10));
    }
  CHECK_THROWS(baselines::pagerank(0, {}));
}

TEST_CASE("fullgraph edges respect the sentence window and overlap") {
  const auto doc = test::build_fixture(3, {{1, "vitamins", {}, 0, 0}, {2, "vitamins", {}, 1, 0},
                                           {3, "vitamins", {}, 5, 0}}, {});
  const OverlapModel overlap(doc.props);
  CHECK(baselines::fullgraph_edges(doc, overlap, 1).size() == 1);
  CHECK(baselines::fullgraph_edges(doc, overlap, 5).size() == 3);
  const auto scores = baselines::fullgraph_scores(doc, overlap, 1);
  CHECK(scores.size() == 3);
  CHECK(scores[0] == doctest::Approx(scores[1]));
  CHECK(scores[0] > scores[2]);
}

TEST_CASE("tf-idf gives zero weight to terms in every sentence") {
  Document doc;
  for (const char* text : {"cells grow fast", "cells divide", "cells grow"}) {
    Sentence s;
    s.tokens = test::fixture_tokens(text);
    doc.sentences.push_back(s);
  }
  std::size_t vocab = 0;
  const auto m = baselines::tfidf_matrix(doc, builtin_stopwords(), vocab);
  REQUIRE(vocab == 4);
  REQUIRE(m.size() == 3 * vocab);
  // columns in order of first appearance: cells, grow, fast, divide
  for (std::size_t s = 0; s < 3; ++s) CHECK(m[s * vocab + 0] == 0.0);
  CHECK(m[0 * vocab + 2] == doctest::Approx(std::log(3.0)));
  CHECK(m[2 * vocab + 1] == doctest::Approx(std::log(1.5)));
  CHECK(m[1 * vocab + 3] == doctest::Approx(std::log(3.0)));
  const auto scores = baselines::textrank_scores(doc, builtin_stopwords());
  CHECK(scores.size() == 3);
}

TEST_CASE("lead and random scorers") {
  const auto lead = baselines::lead_scores(4);
  for (std::size_t i = 1; i < lead.size(); ++i) CHECK(lead[i - 1] > lead[i]);
  const auto a = baselines::random_scores(50, 13), b = baselines::random_scores(50, 13), c = baselines::random_scores(50, 14);
  CHECK(a == b);
  CHECK(a != c);
  for (double x : a) CHECK((x >= 0.0 && x < 1.0));
}

}
