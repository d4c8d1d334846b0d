#pragma once
// Comparison scorers: PageRank over a windowed proposition graph (FullGraph),
// TF-IDF sentence graph (TextRank), Lead, Random and length-weighted Random.

#include <cstddef>
#include <cstdint>
#include <tuple>
#include <vector>

#include "kvd/corpus.hpp"
#include "kvd/overlap.hpp"
#include "kvd/propositions.hpp"

namespace kvd::baselines {

struct PageRankOptions {
  double damping = 0.85;
  double tolerance = 1e-9;  // L1 change between iterates
  std::size_t max_iterations = 200;
};

struct PageRankResult {
  std::vector<double> scores;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Undirected weighted edges (u, v, w) over nodes 0..n-1; w > 0.
using EdgeList = std::vector<std::tuple<std::size_t, std::size_t, double>>;

/// Weighted PageRank; dangling mass is spread uniformly and the result is
/// renormalised to sum to 1. Throws on n == 0.
PageRankResult pagerank(std::size_t n, const EdgeList& edges, const PageRankOptions& options = {});

/// Same iteration on a dense symmetric weight matrix (row-major n x n),
/// using the dispatched mat-vec kernel.
PageRankResult pagerank_dense(std::size_t n, const std::vector<double>& weights,
                              const PageRankOptions& options = {});

/// Edges between propositions with phi > 0 whose sentences are at most
/// `window` apart.
EdgeList fullgraph_edges(const DocumentPropositions& doc, const OverlapModel& overlap, std::size_t window);

/// PageRank of the windowed proposition graph, one score per proposition.
std::vector<double> fullgraph_scores(const DocumentPropositions& doc, const OverlapModel& overlap,
                                     std::size_t window = 50, const PageRankOptions& options = {});

/// Row-major sentences x vocabulary TF-IDF matrix (raw term counts,
/// idf = log(N / df)) over lowercased lemmas without stopwords or punctuation.
std::vector<double> tfidf_matrix(const Document& doc, const StopwordSet& stopwords, std::size_t& vocabulary);

/// PageRank over sentences linked by TF-IDF cosine within `window`.
std::vector<double> textrank_scores(const Document& doc, const StopwordSet& stopwords, std::size_t window = 50,
                                    const PageRankOptions& options = {});

std::vector<double> lead_scores(std::size_t sentences);

/// Uniform draws in [0, 1) from a 64-bit Mersenne Twister.
std::vector<double> random_scores(std::size_t sentences, std::uint64_t seed);

/// Uniform draw times the token share of the sentence's section.
std::vector<double> random_wgt_scores(const Document& doc, std::uint64_t seed);

}  // namespace kvd::baselines
