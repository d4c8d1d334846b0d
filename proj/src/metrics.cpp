#include "kvd/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace kvd {
namespace {

Prf from_counts(double overlap, double candidate, double reference) {
  Prf r;
  r.precision = candidate > 0.0 ? overlap / candidate : 0.0;
  r.recall = reference > 0.0 ? overlap / reference : 0.0;
  r.f1 = r.precision + r.recall > 0.0 ? 2.0 * r.precision * r.recall / (r.precision + r.recall) : 0.0;
  return r;
}

std::map<std::vector<std::string>, std::size_t> ngram_counts(const Tokens& tokens, std::size_t n) {
  std::map<std::vector<std::string>, std::size_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i)
    ++counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                      tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  return counts;
}

}  // namespace

Tokens tokenize(std::string_view text) {
  Tokens out;
  std::string cur;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

Prf rouge_n(const Tokens& candidate, const Tokens& reference, std::size_t n) {
  if (n == 0) throw std::invalid_argument("rouge_n: n must be >= 1");
  if (reference.size() < n) return {};
  const auto cand = ngram_counts(candidate, n);
  const auto ref = ngram_counts(reference, n);
  std::size_t overlap = 0;
  for (const auto& [gram, c] : cand)
    if (auto it = ref.find(gram); it != ref.end()) overlap += std::min(c, it->second);
  const double total_cand = candidate.size() >= n ? static_cast<double>(candidate.size() - n + 1) : 0.0;
  const double total_ref = static_cast<double>(reference.size() - n + 1);
  return from_counts(static_cast<double>(overlap), total_cand, total_ref);
}

std::size_t lcs_length(const Tokens& a, const Tokens& b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

Prf rouge_l(const Tokens& candidate, const Tokens& reference) {
  if (candidate.empty() || reference.empty()) return {};
  return from_counts(static_cast<double>(lcs_length(candidate, reference)), static_cast<double>(candidate.size()),
                     static_cast<double>(reference.size()));
}

Flagged uniq(const Tokens& tokens) {
  if (tokens.size() < 3) return {0.0, false};
  double product = 1.0;
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto counts = ngram_counts(tokens, n);
    const double total = static_cast<double>(tokens.size() - n + 1);
    product *= 1.0 - static_cast<double>(counts.size()) / total;
  }
  return {std::cbrt(product), true};
}

Flagged red_rl(const std::vector<Tokens>& sentences) {
  if (sentences.size() < 2) return {0.0, false};
  double total = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < sentences.size(); ++i)
    for (std::size_t j = i + 1; j < sentences.size(); ++j) {
      total += rouge_l(sentences[i], sentences[j]).f1;
      ++pairs;
    }
  return {total / static_cast<double>(pairs), true};
}

Flagged red_rl_d(const std::vector<Tokens>& sentences) {
  const std::size_t n = sentences.size();
  if (n < 2) return {0.0, false};
  std::vector<double> best(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double f = rouge_l(sentences[i], sentences[j]).f1;
      best[i] = std::max(best[i], f);
      best[j] = std::max(best[j], f);
    }
  double total = 0.0;
  for (double b : best) total += b;
  return {total / static_cast<double>(n), true};
}

double coverage(const std::vector<CycleRecord>& trace, std::size_t propositions) {
  if (propositions == 0) return 0.0;
  std::set<PropId> seen;
  for (const auto& r : trace) seen.insert(r.kept.begin(), r.kept.end());
  return static_cast<double>(seen.size()) / static_cast<double>(propositions);
}

std::vector<RedundancyBin> bin_by_document_redundancy(const std::vector<DocumentMetrics>& docs, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("bin width must be positive");
  struct Acc {
    std::size_t count = 0;
    double rl = 0.0;
    std::size_t rl_count = 0;
    double red = 0.0;
    double tokens = 0.0;
  };
  std::map<long, Acc> bins;
  for (const auto& d : docs) {
    const long index = static_cast<long>(std::floor(d.red_rl_d.value / width));
    auto& a = bins[index];
    ++a.count;
    if (d.rl) {
      a.rl += *d.rl;
      ++a.rl_count;
    }
    a.red += d.red_rl.value;
    a.tokens += static_cast<double>(d.tokens);
  }
  std::vector<RedundancyBin> out;
  for (const auto& [index, a] : bins) {
    RedundancyBin b;
    b.low = static_cast<double>(index) * width;
    b.high = b.low + width;
    b.count = a.count;
    if (a.rl_count > 0) b.mean_rl = a.rl / static_cast<double>(a.rl_count);
    b.mean_red_rl = a.red / static_cast<double>(a.count);
    b.mean_tokens = a.tokens / static_cast<double>(a.count);
    out.push_back(b);
  }
  return out;
}

}  // namespace kvd
