#pragma once
// Lexical overlap between propositions: Jaccard similarity of functor lemma
// sets, greedy bipartite functor alignment, and the mean aligned weight phi.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "kvd/propositions.hpp"

namespace kvd {

using StopwordSet = std::unordered_set<std::string>;

/// The shipped English list (179 entries).
const StopwordSet& builtin_stopwords();
/// One word per line; blank lines and lines starting with '#' are ignored.
StopwordSet load_stopwords(const std::string& path);

struct OverlapOptions {
  bool drop_adjectives = true;
  std::optional<std::string> stopwords_path;  // unset: built-in list
  bool memoize = true;
};

/// Sorted, duplicate-free interned lemma ids.
using LemmaSet = std::vector<std::uint32_t>;

double jaccard(const LemmaSet& a, const LemmaSet& b);
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

struct AlignedPair {
  std::size_t first = 0;   // functor index in the first proposition
  std::size_t second = 0;  // functor index in the second proposition
  double weight = 0.0;

  bool operator==(const AlignedPair&) const = default;
};

using Alignment = std::vector<AlignedPair>;

/// Greedy maximal matching: highest weight first, ties by (first, second);
/// zero-weight pairs are never taken.
Alignment align_functors(const std::vector<LemmaSet>& a, const std::vector<LemmaSet>& b);

/// Mean weight of the alignment, 0 when empty.
double mean_weight(const Alignment& alignment);

/// Per-document overlap oracle. Functor lemma sets are computed once; pointer
/// arguments contribute the lemma set of their target's predicate. phi values
/// are memoized per pair when enabled, so an instance must stay on one thread.
class OverlapModel {
 public:
  explicit OverlapModel(const std::vector<Proposition>& props, const OverlapOptions& options = {});
  OverlapModel(const std::vector<Proposition>& props, const StopwordSet& stopwords, const OverlapOptions& options);

  std::size_t size() const { return functors_.size(); }

  /// Lemma sets of predicate followed by arguments, in argument order.
  const std::vector<LemmaSet>& functors(PropId id) const { return functors_.at(id); }
  std::set<std::string> lemmas(const LemmaSet& set) const;

  /// Alignment with `a` as the first proposition.
  Alignment align(PropId a, PropId b) const;
  /// phi(a, b); computed with the lower id first so that phi is symmetric.
  double phi(PropId a, PropId b) const;

  /// Propositions sharing at least one content lemma with `id`, ascending,
  /// excluding `id` itself. Every q with phi(id, q) > 0 is in this list.
  std::vector<PropId> candidates(PropId id) const;
  const std::vector<PropId>& with_lemma(std::uint32_t lemma) const;

  /// Every distinct lemma id used by a functor of `id`.
  const LemmaSet& all_lemmas(PropId id) const { return all_.at(id); }

  std::size_t phi_evaluations() const { return evaluations_; }

 private:
  void build(const std::vector<Proposition>& props, const StopwordSet& stopwords);
  std::uint32_t intern(const std::string& lemma);

  OverlapOptions options_;
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<std::string> names_;
  std::vector<std::vector<LemmaSet>> functors_;
  std::vector<LemmaSet> all_;
  std::vector<std::vector<PropId>> index_;
  mutable std::unordered_map<std::uint64_t, double> memo_;
  mutable std::size_t evaluations_ = 0;
};

}  // namespace kvd
