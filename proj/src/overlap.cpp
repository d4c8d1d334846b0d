#include "kvd/overlap.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "stopwords_data.hpp"

namespace kvd {
namespace {

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

StopwordSet parse_stopwords(std::istream& in) {
  StopwordSet out;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t\r");
    out.insert(lowercase(line.substr(first, last - first + 1)));
  }
  return out;
}

std::uint64_t pair_key(PropId a, PropId b) { return (static_cast<std::uint64_t>(a) << 32) | b; }

}  // namespace

const StopwordSet& builtin_stopwords() {
  static const StopwordSet words = [] {
    std::istringstream in(detail::kBuiltinStopwords);
    return parse_stopwords(in);
  }();
  return words;
}

StopwordSet load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stopword list: " + path);
  return parse_stopwords(in);
}

double jaccard(const LemmaSet& a, const LemmaSet& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t common = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t common = 0;
  for (const auto& x : a) common += b.count(x);
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

Alignment align_functors(const std::vector<LemmaSet>& a, const std::vector<LemmaSet>& b) {
  Alignment pairs;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (double w = jaccard(a[i], b[j]); w > 0.0) pairs.push_back({i, j, w});
  std::sort(pairs.begin(), pairs.end(), [](const AlignedPair& x, const AlignedPair& y) {
    if (x.weight != y.weight) return x.weight > y.weight;
    return std::tie(x.first, x.second) < std::tie(y.first, y.second);
  });

  std::vector<bool> used_a(a.size(), false);
  std::vector<bool> used_b(b.size(), false);
  Alignment chosen;
  for (const auto& p : pairs) {
    if (used_a[p.first] || used_b[p.second]) continue;
    used_a[p.first] = used_b[p.second] = true;
    chosen.push_back(p);
  }
  return chosen;
}

double mean_weight(const Alignment& alignment) {
  if (alignment.empty()) return 0.0;
  double total = 0.0;
  for (const auto& p : alignment) total += p.weight;
  return total / static_cast<double>(alignment.size());
}

OverlapModel::OverlapModel(const std::vector<Proposition>& props, const OverlapOptions& options)
    : options_(options) {
  if (options.stopwords_path)
    build(props, load_stopwords(*options.stopwords_path));
  else
    build(props, builtin_stopwords());
}

OverlapModel::OverlapModel(const std::vector<Proposition>& props, const StopwordSet& stopwords,
                           const OverlapOptions& options)
    : options_(options) {
  build(props, stopwords);
}

std::uint32_t OverlapModel::intern(const std::string& lemma) {
  auto [it, inserted] = ids_.try_emplace(lemma, static_cast<std::uint32_t>(names_.size()));
  if (inserted) names_.push_back(lemma);
  return it->second;
}

void OverlapModel::build(const std::vector<Proposition>& props, const StopwordSet& stopwords) {
  for (std::size_t i = 0; i < props.size(); ++i)
    if (props[i].id != i) throw std::invalid_argument("proposition ids must equal their position");

  auto lemma_set = [&](const Functor& f) {
    LemmaSet set;
    for (const auto& t : f.tokens) {
      if (t.upos == "PUNCT") continue;
      if (options_.drop_adjectives && t.upos == "ADJ") continue;
      std::string lemma = lowercase(t.lemma.empty() || t.lemma == "_" ? t.form : t.lemma);
      if (stopwords.count(lemma) != 0) continue;
      set.push_back(intern(lemma));
    }
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    return set;
  };

  std::vector<LemmaSet> predicates;
  predicates.reserve(props.size());
  for (const auto& p : props) predicates.push_back(lemma_set(p.predicate));

  functors_.resize(props.size());
  all_.resize(props.size());
  for (const auto& p : props) {
    auto& fs = functors_[p.id];
    fs.push_back(predicates[p.id]);
    for (const auto& arg : p.args) {
      if (arg.kind == FunctorKind::Pointer)
        fs.push_back(arg.target < predicates.size() ? predicates[arg.target] : LemmaSet{});
      else
        fs.push_back(lemma_set(arg));
    }
    auto& all = all_[p.id];
    for (const auto& f : fs) all.insert(all.end(), f.begin(), f.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
  }

  index_.assign(names_.size(), {});
  for (PropId id = 0; id < all_.size(); ++id)
    for (auto lemma : all_[id]) index_[lemma].push_back(id);
}

std::set<std::string> OverlapModel::lemmas(const LemmaSet& set) const {
  std::set<std::string> out;
  for (auto id : set) out.insert(names_.at(id));
  return out;
}

Alignment OverlapModel::align(PropId a, PropId b) const { return align_functors(functors_.at(a), functors_.at(b)); }

double OverlapModel::phi(PropId a, PropId b) const {
  if (a > b) std::swap(a, b);
  if (options_.memoize) {
    if (auto it = memo_.find(pair_key(a, b)); it != memo_.end()) return it->second;
  }
  ++evaluations_;
  const double value = mean_weight(align(a, b));
  if (options_.memoize) memo_.emplace(pair_key(a, b), value);
  return value;
}

std::vector<PropId> OverlapModel::candidates(PropId id) const {
  std::vector<PropId> out;
  for (auto lemma : all_.at(id)) {
    const auto& ids = index_[lemma];
    out.insert(out.end(), ids.begin(), ids.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::erase(out, id);
  return out;
}

const std::vector<PropId>& OverlapModel::with_lemma(std::uint32_t lemma) const { return index_.at(lemma); }

}  // namespace kvd
