#include "kvd/selector.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "kvd/metrics.hpp"

namespace kvd {

bool within_band(std::size_t length, std::size_t budget, std::size_t sigma) {
  const std::size_t gap = length > budget ? length - budget : budget - length;
  return gap < sigma;
}

namespace {

void finish(SummarySelection& s, const std::vector<std::size_t>& lengths, const std::vector<double>& scores,
            std::size_t budget, std::size_t sigma) {
  std::sort(s.ids.begin(), s.ids.end());
  s.tokens = 0;
  s.score = 0.0;
  for (auto id : s.ids) {
    s.tokens += lengths[id];
    s.score += scores[id];
  }
  s.out_of_band = !within_band(s.tokens, budget, sigma);
}

}  // namespace

SummarySelection knapsack_select(const std::vector<std::size_t>& lengths, const std::vector<double>& scores,
                                 std::size_t budget, std::size_t sigma) {
  if (lengths.size() != scores.size()) throw std::invalid_argument("knapsack: lengths and scores differ in size");
  if (sigma == 0) throw std::invalid_argument("knapsack: sigma must be positive");
  SummarySelection out;
  out.selector = "knapsack";
  const std::size_t n = lengths.size();
  if (n == 0) {
    out.infeasible = true;
    out.out_of_band = !within_band(0, budget, sigma);
    return out;
  }
  for (double s : scores)
    if (s < 0.0) throw std::invalid_argument("knapsack: scores must be non-negative");

  const std::size_t cap = budget + sigma - 1;
  const std::size_t low = budget >= sigma ? budget - sigma + 1 : 0;
  constexpr double kNone = -std::numeric_limits<double>::infinity();

  // best[i][L]: highest score using items i..n-1 with total length exactly L.
  const std::size_t width = cap + 1;
  std::vector<double> best((n + 1) * width, kNone);
  auto at = [&](std::size_t i, std::size_t len) -> double& { return best[i * width + len]; };
  at(n, 0) = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t len = 0; len <= cap; ++len) {
      double v = at(i + 1, len);
      if (lengths[i] <= len && at(i + 1, len - lengths[i]) != kNone)
        v = std::max(v, at(i + 1, len - lengths[i]) + scores[i]);
      at(i, len) = v;
    }
  }

  auto pick_total = [&](std::size_t from) -> std::optional<std::size_t> {
    std::optional<std::size_t> chosen;
    for (std::size_t len = from; len <= cap; ++len) {
      if (at(0, len) == kNone) continue;
      if (!chosen || at(0, len) > at(0, *chosen)) chosen = len;
    }
    return chosen;
  };

  auto total = pick_total(low);
  if (!total) {
    out.infeasible = true;
    total = pick_total(0);
  }
  std::size_t remaining = *total;
  for (std::size_t i = 0; i < n; ++i) {
    // Taking the earliest usable item yields the lexicographically smallest set.
    if (lengths[i] <= remaining && at(i + 1, remaining - lengths[i]) != kNone &&
        at(i + 1, remaining - lengths[i]) + scores[i] == at(i, remaining)) {
      out.ids.push_back(i);
      remaining -= lengths[i];
    }
  }
  finish(out, lengths, scores, budget, sigma);
  return out;
}

SummarySelection greedy_select(const std::vector<double>& scores, const std::vector<std::size_t>& lengths,
                               std::size_t budget, std::size_t sigma) {
  if (lengths.size() != scores.size()) throw std::invalid_argument("greedy: lengths and scores differ in size");
  SummarySelection out;
  out.selector = "greedy";
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::size_t total = 0;
  for (std::size_t id : order) {
    if (total >= budget) break;
    out.ids.push_back(id);
    total += lengths[id];
  }
  finish(out, lengths, scores, budget, sigma);
  return out;
}

SummarySelection oracle_select(const std::vector<std::vector<std::string>>& sentences,
                               const std::vector<std::string>& reference, std::size_t budget, std::size_t sigma) {
  if (reference.empty()) throw std::invalid_argument("oracle: reference summary is empty");
  SummarySelection out;
  out.selector = "oracle";
  const std::size_t cap = budget + sigma - 1;
  std::vector<bool> chosen(sentences.size(), false);
  std::size_t total = 0;

  auto objective = [&](const std::vector<bool>& pick) {
    std::vector<std::string> tokens;
    for (std::size_t i = 0; i < sentences.size(); ++i)
      if (pick[i]) tokens.insert(tokens.end(), sentences[i].begin(), sentences[i].end());
    return rouge_n(tokens, reference, 1).recall + rouge_n(tokens, reference, 2).recall;
  };

  double current = 0.0;
  while (true) {
    std::optional<std::size_t> best;
    double best_gain = 0.0;
    double best_value = current;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      if (chosen[i] || sentences[i].empty() || total + sentences[i].size() > cap) continue;
      chosen[i] = true;
      const double value = objective(chosen);
      chosen[i] = false;
      const double gain = (value - current) / static_cast<double>(sentences[i].size());
      if (gain > best_gain) {
        best = i;
        best_gain = gain;
        best_value = value;
      }
    }
    if (!best) break;
    chosen[*best] = true;
    total += sentences[*best].size();
    current = best_value;
  }

  std::vector<std::size_t> lengths(sentences.size());
  std::vector<double> gains(sentences.size(), 0.0);
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    lengths[i] = sentences[i].size();
    if (chosen[i]) out.ids.push_back(i);
  }
  finish(out, lengths, gains, budget, sigma);
  out.score = current;
  return out;
}

std::vector<double> sentence_scores_from_propositions(const DocumentPropositions& doc, std::size_t sentences,
                                                      const std::vector<double>& proposition_scores) {
  if (proposition_scores.size() != doc.size())
    throw std::invalid_argument("sentence scores: one score per proposition expected");
  std::vector<double> out(sentences, 0.0);
  for (const auto& p : doc.props) out.at(p.sentence_id) += proposition_scores[p.id];
  return out;
}

}  // namespace kvd
