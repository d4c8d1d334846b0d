#pragma once
// Hand-built proposition documents and brute-force oracles shared by the
// unit tests and the acceptance runner.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "kvd/corpus.hpp"
#include "kvd/memory.hpp"
#include "kvd/propositions.hpp"

namespace kvd::test {

inline std::string data_path(const std::string& name) { return std::string(KVD_TEST_DATA_DIR) + "/" + name; }
inline std::string minicorpus_path() { return KVD_MINICORPUS; }
inline std::string long_document_path() { return KVD_LONG_DOCUMENT; }

// --- hand-built propositions ------------------------------------------------

inline const std::map<std::string, std::string>& fixture_lemmas() {
  static const std::map<std::string, std::string> m = {
      {"antioxidants", "antioxidant"}, {"are", "be"},          {"is", "be"},
      {"controlled", "control"},       {"patients", "patient"}, {"vitamins", "vitamin"},
      {"linked", "link"},              {"contributes", "contribute"},
      {"relations", "relation"},       {"exponents", "exponent"}, {"functions", "function"},
      {"points", "point"},             {"generalized", "generalize"}, {"related", "relate"},
      {"behooves", "behoove"},         {"been", "be"},          {"these", "this"},
      {"models", "model"},
  };
  return m;
}

inline const std::set<std::string>& fixture_adjectives() {
  static const std::set<std::string> s = {"healthy", "reactive", "oxidant", "enzymatic", "nonenzimatic",
                                          "cystic", "lipid-soluble", "pulmonary", "simple", "critical",
                                          "dynamic", "linear", "equal", "dimensional", "scalar", "able"};
  return s;
}

inline std::vector<Token> fixture_tokens(const std::string& text) {
  std::vector<Token> out;
  std::istringstream in(text);
  std::string word;
  int index = 1;
  while (in >> word) {
    Token t;
    t.index = index++;
    t.form = word;
    auto it = fixture_lemmas().find(word);
    t.lemma = it != fixture_lemmas().end() ? it->second : word;
    t.upos = fixture_adjectives().count(word) ? "ADJ" : "NOUN";
    t.deprel = "dep";
    out.push_back(std::move(t));
  }
  return out;
}

struct FixtureProp {
  PropId display = 0;  // 1-based id as printed; the internal id is display - 1
  std::string predicate;
  std::vector<std::string> args;  // "$N" is a pointer to display id N
  std::size_t sentence = 0;
  std::size_t section = 0;
};

struct FixtureTree {
  PropId root = 0;                              // display id
  std::vector<std::pair<PropId, PropId>> edges;  // display ids, parent -> child
};

inline PropId internal(PropId display) { return display - 1; }

/// Builds a document with ids 0..max_display-1. Ids not listed become filler
/// propositions with unique lemmas that never enter a tree.
inline DocumentPropositions build_fixture(PropId max_display, const std::vector<FixtureProp>& props,
                                          const std::vector<FixtureTree>& trees) {
  DocumentPropositions doc;
  doc.props.resize(max_display);
  for (PropId i = 0; i < max_display; ++i) {
    auto& p = doc.props[i];
    p.id = i;
    p.predicate.kind = FunctorKind::Predicate;
    p.predicate.tokens = fixture_tokens("filler" + std::to_string(i));
    p.sentence_id = 1000 + i;
    p.degenerate = true;
  }
  for (const auto& f : props) {
    auto& p = doc.props.at(internal(f.display));
    p.predicate.tokens = fixture_tokens(f.predicate);
    p.sentence_id = f.sentence;
    p.section_id = f.section;
    p.degenerate = f.args.empty();
    for (const auto& a : f.args) {
      Functor fn;
      if (!a.empty() && a[0] == '$') {
        fn.kind = FunctorKind::Pointer;
        fn.target = internal(static_cast<PropId>(std::stoul(a.substr(1))));
      } else {
        fn.kind = FunctorKind::Literal;
        fn.tokens = fixture_tokens(a);
      }
      p.args.push_back(std::move(fn));
    }
  }
  for (const auto& t : trees) {
    PropositionTree tree;
    tree.root = internal(t.root);
    std::map<PropId, std::vector<PropId>> kids;
    for (const auto& [a, b] : t.edges) {
      kids[internal(a)].push_back(internal(b));
      tree.edges.emplace_back(internal(a), internal(b));
    }
    std::function<void(PropId)> visit = [&](PropId n) {
      tree.nodes.push_back(n);
      for (PropId c : kids[n]) visit(c);
    };
    visit(tree.root);
    doc.trees.push_back(std::move(tree));
  }
  return doc;
}

/// Three introduction sentences of a biomedical article, read with WM = 5.
inline DocumentPropositions reading_cycles_fixture() {
  const std::vector<FixtureProp> props = {
      {1, "people", {"healthy"}, 0},
      {2, "species", {"reactive"}, 0},
      {3, "species", {"oxidant"}, 0},
      {4, "are controlled", {"antioxidants", "species", "in people"}, 0},
      {5, "of", {"a number", "antioxidants"}, 0},
      {6, "antioxidants", {"enzymatic"}, 0},
      {7, "antioxidants", {"nonenzimatic"}, 0},
      {8, "with", {"patients", "cystic fibrosis"}, 1},
      {9, "BE", {"cystic fibrosis", "cf"}, 1},
      {10, "of", {"deficiency", "$7"}, 1},
      {11, "is linked", {"malabsortion", "$10", "$8"}, 1},
      {12, "of", {"malabsortion", "vitamins"}, 1},
      {13, "vitamins", {"lipid-soluble"}, 1},
      {14, "inflammation", {"pulmonary"}, 2},
      {15, "inflammation", {"$8"}, 2},
      {16, "contributes", {"$15", "to depletion"}, 2},
      {17, "of", {"depletion", "antioxidants"}, 2},
  };
  const std::vector<FixtureTree> trees = {
      {4, {{4, 1}, {4, 2}, {4, 3}, {4, 5}, {5, 6}, {5, 7}}},
      {11, {{11, 10}, {11, 8}, {8, 9}, {11, 12}, {12, 13}}},
      {16, {{16, 15}, {15, 14}, {16, 17}}},
  };
  return build_fixture(17, props, trees);
}

/// Four sentences of a turbulence article: two context sentences followed by
/// the cycles k and k+1 where recall is needed.
inline DocumentPropositions recall_cycles_fixture() {
  const std::vector<FixtureProp> props = {
      {21, "the simple scaling", {"$22"}, 0},
      {22, "see", {"we", "at most critical points"}, 0},
      {24, "must be generalized", {"that", "$21", "$25"}, 0},
      {25, "to multiscaling", {"in turbulence"}, 0},
      {71, "behooves", {"therefore", "it", "us", "$72", "$75", "$77"}, 1},
      {72, "to examine first the dynamic multiscaling", {"of structure functions", "$73"}, 1},
      {73, "in a shell model for mhd", {"three dimensional", "3d mhd"}, 1},
      {75, "are related",
       {"dynamic multiscaling exponents", "by linear bridge relations to equal time multiscaling exponents"}, 1},
      {77, "have not been able", {"we", "$78"}, 1},
      {78, "to find", {"$79", "so far"}, 1},
      {79, "such relations", {"for mhd turbulence"}, 1},
      {80, "and", {"$71", "scalar turbulence"}, 1},
      {81, "obtain", {"therefore", "we", "$82", "$84"}, 2},
      {82, "and", {"equal time", "$83"}, 2},
      {83, "time _dependent structure functions", {"for a shell model"}, 2},
      {84, "for 3 d mhd turbulence from these", {"and", "$86"}, 2},
      {85, "equal time", {"dynamic", "$87"}, 2},
      {86, "and", {"$85"}, 2},
      {87, "multiscaling", {"exponents"}, 2},
      {88, "try", {"then", "we", "$89"}, 3},
      {89, "to see", {"$90"}, 3},
      {90, "suggest", {"if", "these", "any bridge relations"}, 3},
  };
  const std::vector<FixtureTree> trees = {
      {24, {{24, 21}, {24, 25}, {21, 22}}},
      {80, {{80, 71}, {71, 72}, {71, 75}, {71, 77}, {72, 73}, {77, 78}, {78, 79}}},
      {81, {{81, 82}, {81, 84}, {82, 83}, {84, 86}, {86, 85}, {85, 87}}},
      {88, {{88, 89}, {89, 90}}},
  };
  return build_fixture(90, props, trees);
}

inline std::set<PropId> displayed(const std::vector<PropId>& ids) {
  std::set<PropId> out;
  for (PropId id : ids) out.insert(id + 1);
  return out;
}

inline std::string join_ids(const std::set<PropId>& ids) {
  std::string s = "{";
  for (PropId id : ids) s += (s.size() > 1 ? "," : "") + std::to_string(id);
  return s + "}";
}

/// n propositions whose predicate and one or two literal arguments are drawn
/// from a small vocabulary, so that many pairs overlap. No trees.
inline DocumentPropositions random_fixture(PropId n, std::mt19937_64& rng) {
  static const std::vector<std::string> vocab = {"alpha", "beta", "gamma", "delta", "omega", "sigma", "kappa"};
  std::uniform_int_distribution<std::size_t> word(0, vocab.size() - 1);
  std::uniform_int_distribution<int> arity(1, 2);
  std::vector<FixtureProp> props;
  for (PropId i = 1; i <= n; ++i) {
    FixtureProp f{i, vocab[word(rng)], {}, i, 0};
    for (int a = arity(rng); a > 0; --a) f.args.push_back(vocab[word(rng)]);
    props.push_back(std::move(f));
  }
  return build_fixture(n, props, {});
}

// --- brute-force oracles ----------------------------------------------------

/// Hop distances from `source` by BFS.
inline std::map<PropId, std::size_t> bfs_distances(const Adjacency& g, PropId source) {
  std::map<PropId, std::size_t> dist{{source, 0}};
  std::queue<PropId> q;
  q.push(source);
  while (!q.empty()) {
    PropId u = q.front();
    q.pop();
    for (PropId v : g.at(u))
      if (!dist.count(v)) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
  }
  return dist;
}

/// Uniformly random labelled tree on the given ids (random parent attachment).
inline MemoryTree random_tree(const std::vector<PropId>& ids, std::mt19937_64& rng) {
  std::vector<std::pair<PropId, PropId>> edges;
  for (std::size_t i = 1; i < ids.size(); ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    edges.emplace_back(ids[pick(rng)], ids[i]);
  }
  return MemoryTree(ids, edges, ids.front());
}

struct KnapsackOracle {
  std::optional<double> score;  // none: no subset inside the band
  std::size_t total = 0;
  std::vector<std::size_t> ids;
};

/// Exhaustive subset enumeration with the same band and tie rules.
inline KnapsackOracle knapsack_oracle(const std::vector<std::size_t>& lengths, const std::vector<double>& scores,
                                      std::size_t budget, std::size_t sigma) {
  KnapsackOracle best;
  const std::size_t n = lengths.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::size_t total = 0;
    double score = 0.0;
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) {
        total += lengths[i];
        score += scores[i];
        ids.push_back(i);
      }
    const std::size_t diff = total > budget ? total - budget : budget - total;
    if (diff >= sigma) continue;
    bool better = !best.score || score > *best.score + 1e-9;
    if (!better && best.score && std::abs(score - *best.score) <= 1e-9) {
      better = total < best.total || (total == best.total && ids < best.ids);
    }
    if (better) {
      best.score = score;
      best.total = total;
      best.ids = ids;
    }
  }
  return best;
}

/// PageRank fixed point solved directly: (I - d M) x = (1 - d) / n with
/// dangling columns spread uniformly, by Gaussian elimination.
inline std::vector<double> pagerank_oracle(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges,
                                           double d = 0.85) {
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (const auto& [u, v, x] : edges) {
    w[u][v] += x;
    w[v][u] += x;
  }
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    double out = 0.0;
    for (std::size_t i = 0; i < n; ++i) out += w[i][j];
    for (std::size_t i = 0; i < n; ++i) {
      const double m = out > 0.0 ? w[i][j] / out : 1.0 / static_cast<double>(n);
      a[i][j] = (i == j ? 1.0 : 0.0) - d * m;
    }
  }
  for (std::size_t i = 0; i < n; ++i) a[i][n] = (1.0 - d) / static_cast<double>(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<double> x(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += x[i] = a[i][n] / a[i][i];
  for (double& v : x) v /= total;
  return x;
}

/// Maximum total weight over every spanning tree, by enumerating all
/// (n-1)-edge subsets. Returns nullopt if the graph is disconnected.
inline std::optional<double> max_spanning_weight(std::size_t n,
                                                 const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges) {
  std::optional<double> best;
  const std::size_t m = edges.size();
  if (n <= 1) return 0.0;
  std::vector<bool> pick(m, false);
  if (m < n - 1) return best;
  std::fill(pick.end() - static_cast<std::ptrdiff_t>(n - 1), pick.end(), true);
  do {
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    bool acyclic = true;
    double total = 0.0;
    for (std::size_t e = 0; e < m && acyclic; ++e) {
      if (!pick[e]) continue;
      const auto& [u, v, w] = edges[e];
      const std::size_t ru = find(u), rv = find(v);
      if (ru == rv) acyclic = false;
      parent[ru] = rv;
      total += w;
    }
    if (acyclic && (!best || total > *best)) best = total;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return best;
}

/// Jacobi eigendecomposition of a symmetric matrix; returns the eigenvector
/// of the largest eigenvalue with non-negative sum, L2-normalised.
inline std::vector<double> principal_eigenvector(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
  }
  std::size_t top = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (a[i][i] > a[top][top]) top = i;
  std::vector<double> x(n);
  double sum = 0.0, norm = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    x[k] = v[k][top];
    sum += x[k];
    norm += x[k] * x[k];
  }
  norm = std::sqrt(norm) * (sum < 0 ? -1.0 : 1.0);
  for (double& e : x) e /= norm;
  return x;
}

}  // namespace kvd::test
