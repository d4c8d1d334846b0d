#pragma once
// End-to-end runs: corpus -> scores -> selection -> metrics -> output files.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kvd/corpus.hpp"
#include "kvd/memory.hpp"
#include "kvd/metrics.hpp"
#include "kvd/selector.hpp"
#include "kvd/trace.hpp"

namespace kvd {

enum class SystemId { TreeKvd, GraphKvd, FullGraph, TextRank, Lead, Random, RandomWgt };
enum class SelectorId { Knapsack, Greedy, Oracle };

std::string_view to_string(SystemId id);
std::string_view to_string(SelectorId id);
std::optional<SystemId> parse_system(std::string_view name);
std::optional<SelectorId> parse_selector(std::string_view name);

struct RunConfig {
  std::string corpus;
  SystemId system = SystemId::TreeKvd;
  SimulationParams params;
  SelectorId selector = SelectorId::Knapsack;
  std::size_t budget = 190;
  std::size_t sigma = 50;
  std::size_t window = 50;
  std::uint64_t seed = 13;
  std::string out_dir = "out";
  bool trace = false;
  std::size_t jobs = 1;
  bool drop_adjectives = true;
  std::optional<std::string> stopwords_path;
  double bin_width = 0.1;

  /// Throws std::invalid_argument on the first inconsistent field.
  void validate() const;
};

/// `key = value` lines; '#' starts a comment. Keys use the long flag names.
std::map<std::string, std::string> read_config_file(const std::string& path);
/// Applies settings over `config`; unknown keys or bad values throw.
void apply_config(RunConfig& config, const std::map<std::string, std::string>& settings);

struct DocumentResult {
  std::string doc_id;
  bool ok = true;
  std::string error;
  SummarySelection selection;
  std::string text;
  DocumentMetrics metrics;
  std::vector<CycleRecord> trace;
  std::size_t propositions = 0;
};

/// Scores, selects and evaluates one document. Throws on failure.
DocumentResult summarize_document(const Document& doc, const RunConfig& config);

/// Per-sentence scores of the configured system.
std::vector<double> system_sentence_scores(const Document& doc, const RunConfig& config,
                                           std::vector<CycleRecord>* trace = nullptr,
                                           std::size_t* propositions = nullptr);

struct RunReport {
  std::vector<DocumentResult> documents;  // successful documents, by doc_id
  std::size_t failures = 0;
  std::vector<std::string> messages;
  std::vector<RedundancyBin> bins;
};

/// Processes every readable entry on `config.jobs` workers.
RunReport run_corpus(const std::vector<CorpusEntry>& entries, const RunConfig& config);

/// Writes summaries.jsonl, metrics.csv, bins.json, run.json and, when
/// tracing, trace.jsonl into config.out_dir.
void write_outputs(const RunReport& report, const RunConfig& config);

/// Full run; returns the process exit status.
int run(const RunConfig& config, std::ostream& log);

/// Merges metrics.csv of several run directories into one table with one
/// column per run. Returns the process exit status.
int compare(const std::vector<std::string>& run_dirs, const std::string& out_csv, std::ostream& log);

}  // namespace kvd
