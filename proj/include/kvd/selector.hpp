#pragma once
// Sentence selection under a soft token budget W +- sigma.

#include <cstddef>
#include <string>
#include <vector>

#include "kvd/memory.hpp"
#include "kvd/propositions.hpp"

namespace kvd {

struct SummarySelection {
  std::vector<std::size_t> ids;  // ascending sentence ids
  std::size_t tokens = 0;
  double score = 0.0;
  std::string selector;
  bool infeasible = false;   // knapsack found nothing inside the band
  bool out_of_band = false;  // |tokens - W| >= sigma
};

/// True when |length - budget| < sigma.
bool within_band(std::size_t length, std::size_t budget, std::size_t sigma);

/// Exact 0-1 knapsack over total lengths 0..W+sigma-1. Maximises the score
/// inside the band (W-sigma, W+sigma); ties prefer the shorter total, then the
/// lexicographically smallest id set. Falls back to the best subset under
/// the upper bound, flagged infeasible, when the band is unreachable.
SummarySelection knapsack_select(const std::vector<std::size_t>& lengths, const std::vector<double>& scores,
                                 std::size_t budget, std::size_t sigma);

/// Highest score first (ties by id) until the total reaches W.
SummarySelection greedy_select(const std::vector<double>& scores, const std::vector<std::size_t>& lengths,
                               std::size_t budget, std::size_t sigma);

/// Hill-climbing on ROUGE-1 + ROUGE-2 recall gain per token against the
/// reference, staying under W + sigma. Sentences are token lists.
SummarySelection oracle_select(const std::vector<std::vector<std::string>>& sentences,
                               const std::vector<std::string>& reference, std::size_t budget, std::size_t sigma);

/// Sum of proposition scores per sentence.
std::vector<double> sentence_scores_from_propositions(const DocumentPropositions& doc, std::size_t sentences,
                                                      const std::vector<double>& proposition_scores);

}  // namespace kvd
