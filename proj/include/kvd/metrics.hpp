#pragma once
// Relevancy and redundancy metrics: ROUGE-N/L, Uniq, RedRL, RedRL_D,
// simulation coverage, and binning of documents by their redundancy.
// All values are fractions in [0, 1]; reports scale them by 100.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kvd/trace.hpp"

namespace kvd {

using Tokens = std::vector<std::string>;

/// Lowercased whitespace tokens.
Tokens tokenize(std::string_view text);

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Clipped n-gram overlap. Empty reference gives zeros.
Prf rouge_n(const Tokens& candidate, const Tokens& reference, std::size_t n);
std::size_t lcs_length(const Tokens& a, const Tokens& b);
Prf rouge_l(const Tokens& candidate, const Tokens& reference);

/// A metric that is undefined on too-short input reports 0 with defined = false.
struct Flagged {
  double value = 0.0;
  bool defined = true;
};

/// Geometric mean over n = 1..3 of (1 - distinct n-grams / n-grams).
Flagged uniq(const Tokens& tokens);
/// Mean ROUGE-L F1 over unordered pairs of summary sentences.
Flagged red_rl(const std::vector<Tokens>& sentences);
/// Mean over sentences of the best ROUGE-L F1 against any other sentence.
Flagged red_rl_d(const std::vector<Tokens>& sentences);

/// Fraction of propositions kept in memory in at least one cycle.
double coverage(const std::vector<CycleRecord>& trace, std::size_t propositions);

struct DocumentMetrics {
  std::string doc_id;
  std::optional<double> r1, r2, rl;  // F1; absent without a reference
  Flagged uniq;
  Flagged red_rl;
  Flagged red_rl_d;
  std::size_t tokens = 0;
  std::optional<double> coverage;
};

struct RedundancyBin {
  double low = 0.0;
  double high = 0.0;
  std::size_t count = 0;
  std::optional<double> mean_rl;
  double mean_red_rl = 0.0;
  double mean_tokens = 0.0;
};

/// Equal-width bins over RedRL_D; empty bins are omitted.
std::vector<RedundancyBin> bin_by_document_redundancy(const std::vector<DocumentMetrics>& docs, double width);

}  // namespace kvd
