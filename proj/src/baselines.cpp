#include "kvd/baselines.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "kvd/kernels.hpp"

namespace kvd::baselines {
namespace {

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void normalise(std::vector<double>& x) {
  const double total = kernels::sum(x);
  if (total > 0.0) kernels::scale(1.0 / total, x);
}

}  // namespace

PageRankResult pagerank(std::size_t n, const EdgeList& edges, const PageRankOptions& options) {
  if (n == 0) throw std::invalid_argument("pagerank: empty graph");
  std::vector<std::vector<std::pair<std::size_t, double>>> in(n);
  std::vector<double> out_weight(n, 0.0);
  for (const auto& [u, v, w] : edges) {
    if (u >= n || v >= n || u == v || !(w > 0.0)) throw std::invalid_argument("pagerank: bad edge");
    in[v].emplace_back(u, w);
    in[u].emplace_back(v, w);
    out_weight[u] += w;
    out_weight[v] += w;
  }

  const double nd = static_cast<double>(n);
  PageRankResult result;
  std::vector<double> x(n, 1.0 / nd);
  std::vector<double> y(n);
  for (result.iterations = 1; result.iterations <= options.max_iterations; ++result.iterations) {
    double dangling = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (out_weight[j] == 0.0) dangling += x[j];
    const double base = (1.0 - options.damping) / nd + options.damping * dangling / nd;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (const auto& [j, w] : in[i]) acc += w / out_weight[j] * x[j];
      y[i] = base + options.damping * acc;
    }
    normalise(y);
    const double diff = kernels::l1_distance(x, y);
    std::swap(x, y);
    if (diff < options.tolerance) {
      result.converged = true;
      break;
    }
  }
  result.iterations = std::min(result.iterations, options.max_iterations);
  result.scores = std::move(x);
  return result;
}

PageRankResult pagerank_dense(std::size_t n, const std::vector<double>& weights, const PageRankOptions& options) {
  if (n == 0) throw std::invalid_argument("pagerank: empty graph");
  if (weights.size() != n * n) throw std::invalid_argument("pagerank: weight matrix has the wrong size");
  std::vector<double> out_weight(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      out_weight[j] += weights[i * n + j];
    }
  // transition[i][j] = w_ij / out(j)
  std::vector<double> transition(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && out_weight[j] > 0.0) transition[i * n + j] = weights[i * n + j] / out_weight[j];

  const double nd = static_cast<double>(n);
  PageRankResult result;
  std::vector<double> x(n, 1.0 / nd);
  std::vector<double> y(n);
  for (result.iterations = 1; result.iterations <= options.max_iterations; ++result.iterations) {
    double dangling = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (out_weight[j] == 0.0) dangling += x[j];
    kernels::matvec(transition, n, n, x, y);
    kernels::scale(options.damping, y);
    const double base = (1.0 - options.damping) / nd + options.damping * dangling / nd;
    for (double& v : y) v += base;
    normalise(y);
    const double diff = kernels::l1_distance(x, y);
    std::swap(x, y);
    if (diff < options.tolerance) {
      result.converged = true;
      break;
    }
  }
  result.iterations = std::min(result.iterations, options.max_iterations);
  result.scores = std::move(x);
  return result;
}

EdgeList fullgraph_edges(const DocumentPropositions& doc, const OverlapModel& overlap, std::size_t window) {
  EdgeList edges;
  for (PropId p = 0; p < doc.size(); ++p) {
    const std::size_t sp = doc.at(p).sentence_id;
    for (PropId q : overlap.candidates(p)) {
      if (q <= p) continue;
      const std::size_t sq = doc.at(q).sentence_id;
      if ((sp > sq ? sp - sq : sq - sp) > window) continue;
      const double w = overlap.phi(p, q);
      if (w > 0.0) edges.emplace_back(p, q, w);
    }
  }
  return edges;
}

std::vector<double> fullgraph_scores(const DocumentPropositions& doc, const OverlapModel& overlap,
                                     std::size_t window, const PageRankOptions& options) {
  if (doc.size() == 0) return {};
  return pagerank(doc.size(), fullgraph_edges(doc, overlap, window), options).scores;
}

std::vector<double> tfidf_matrix(const Document& doc, const StopwordSet& stopwords, std::size_t& vocabulary) {
  std::map<std::string, std::size_t> vocab;
  std::vector<std::map<std::size_t, double>> counts(doc.sentences.size());
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    for (const auto& t : doc.sentences[s].tokens) {
      if (t.upos == "PUNCT") continue;
      std::string lemma = lowercase(t.lemma.empty() || t.lemma == "_" ? t.form : t.lemma);
      if (stopwords.count(lemma) != 0) continue;
      auto [it, _] = vocab.try_emplace(lemma, vocab.size());
      counts[s][it->second] += 1.0;
    }
  }
  vocabulary = vocab.size();
  std::vector<double> df(vocabulary, 0.0);
  for (const auto& row : counts)
    for (const auto& [term, _] : row) df[term] += 1.0;
  const double n = static_cast<double>(doc.sentences.size());
  std::vector<double> matrix(doc.sentences.size() * vocabulary, 0.0);
  for (std::size_t s = 0; s < counts.size(); ++s)
    for (const auto& [term, tf] : counts[s]) matrix[s * vocabulary + term] = tf * std::log(n / df[term]);
  return matrix;
}

std::vector<double> textrank_scores(const Document& doc, const StopwordSet& stopwords, std::size_t window,
                                    const PageRankOptions& options) {
  const std::size_t n = doc.sentences.size();
  if (n == 0) return {};
  if (n == 1) return {1.0};
  std::size_t v = 0;
  const auto m = tfidf_matrix(doc, stopwords, v);
  auto row = [&](std::size_t s) { return std::span<const double>(m.data() + s * v, v); };
  std::vector<double> norms(n);
  for (std::size_t s = 0; s < n; ++s) norms[s] = std::sqrt(kernels::dot(row(s), row(s)));

  std::vector<double> weights(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n && j - i <= window; ++j) {
      if (norms[i] == 0.0 || norms[j] == 0.0) continue;
      const double cosine = kernels::dot(row(i), row(j)) / (norms[i] * norms[j]);
      if (cosine > 0.0) weights[i * n + j] = weights[j * n + i] = cosine;
    }
  return pagerank_dense(n, weights, options).scores;
}

std::vector<double> lead_scores(std::size_t sentences) {
  std::vector<double> out(sentences);
  for (std::size_t i = 0; i < sentences; ++i) out[i] = static_cast<double>(sentences - i);
  return out;
}

std::vector<double> random_scores(std::size_t sentences, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> out(sentences);
  for (double& x : out) x = uniform01(rng);
  return out;
}

std::vector<double> random_wgt_scores(const Document& doc, std::uint64_t seed) {
  auto out = random_scores(doc.sentences.size(), seed);
  const double total = static_cast<double>(doc.token_count());
  if (total == 0.0) return out;
  std::vector<double> section_tokens(doc.sections.size(), 0.0);
  for (const auto& s : doc.sentences)
    if (s.section_id < section_tokens.size()) section_tokens[s.section_id] += static_cast<double>(s.tokens.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto sec = doc.sentences[i].section_id;
    out[i] *= sec < section_tokens.size() ? section_tokens[sec] / total : 0.0;
  }
  return out;
}

}  // namespace kvd::baselines
