#include <cmath>

#include "doctest.h"
#include "kvd/metrics.hpp"

using namespace kvd;

TEST_SUITE("metrics") {

TEST_CASE("rouge-n clips repeated n-grams") {
  const auto r1 = rouge_n(tokenize("the cat sat"), tokenize("The cat ran"), 1);
  CHECK(r1.precision == doctest::Approx(2.0 / 3.0));
  CHECK(r1.recall == doctest::Approx(2.0 / 3.0));
  CHECK(r1.f1 == doctest::Approx(2.0 / 3.0));
  const auto r2 = rouge_n(tokenize("the cat sat"), tokenize("the cat ran"), 2);
  CHECK(r2.f1 == doctest::Approx(0.5));
  const auto clip = rouge_n(tokenize("the the the"), tokenize("the cat"), 1);
  CHECK(clip.precision == doctest::Approx(1.0 / 3.0));
  CHECK(clip.recall == doctest::Approx(0.5));
  CHECK(rouge_n(tokenize("a"), {}, 1).f1 == 0.0);
}

TEST_CASE("longest common subsequence") {
  CHECK(lcs_length(tokenize("a b c d"), tokenize("a c d")) == 3);
  CHECK(lcs_length(tokenize("a b"), tokenize("b a")) == 1);
  CHECK(lcs_length({}, tokenize("a")) == 0);
  const auto l = rouge_l(tokenize("police killed the gunman"), tokenize("police kill the gunman"));
  CHECK(l.recall == doctest::Approx(0.75));
  CHECK(l.f1 == doctest::Approx(0.75));
}

TEST_CASE("uniq") {
  const auto repeated = uniq(tokenize("a a a a"));
  CHECK(repeated.defined);
  CHECK(repeated.value == doctest::Approx(std::cbrt(0.75 * (2.0 / 3.0) * 0.5)));
  CHECK(uniq(tokenize("a b c d")).value == 0.0);
  CHECK_FALSE(uniq(tokenize("a b")).defined);
}

TEST_CASE("summary redundancy") {
  const std::vector<Tokens> s{tokenize("a b c"), tokenize("a b c"), tokenize("x y z")};
  const auto pairs = red_rl(s);
  CHECK(pairs.value == doctest::Approx(1.0 / 3.0));
  const auto best = red_rl_d(s);
  CHECK(best.value == doctest::Approx(2.0 / 3.0));
  CHECK_FALSE(red_rl({tokenize("a b")}).defined);
}

TEST_CASE("coverage counts propositions kept at least once") {
  std::vector<CycleRecord> trace(2);
  trace[0].kept = {0, 1};
  trace[1].kept = {1, 3};
  CHECK(coverage(trace, 4) == doctest::Approx(0.75));
}

TEST_CASE("redundancy bins") {
  std::vector<DocumentMetrics> docs(3);
  docs[0].red_rl_d.value = 0.05;
  docs[1].red_rl_d.value = 0.07;
  docs[2].red_rl_d.value = 0.35;
  docs[0].tokens = 100;
  docs[1].tokens = 200;
  docs[2].tokens = 50;
  const auto bins = bin_by_document_redundancy(docs, 0.1);
  REQUIRE(bins.size() == 2);
  CHECK(bins[0].count == 2);
  CHECK(bins[0].mean_tokens == doctest::Approx(150.0));
  CHECK(bins[1].low == doctest::Approx(0.3));
  CHECK_FALSE(bins[1].mean_rl.has_value());
}

}
