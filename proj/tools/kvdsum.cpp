// kvdsum: extractive summarisation driven by a working-memory simulation.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "kvd/corpus.hpp"
#include "kvd/propositions.hpp"
#include "kvd/run.hpp"

namespace {

// Flags are collected as strings and applied through the same path as the
// config file, so both accept identical keys and values.
struct FlagSet {
  std::vector<std::pair<std::string, CLI::Option*>> options;
  std::map<std::string, std::string> values;

  void add(CLI::App* app, const std::string& key, const std::string& help) {
    options.emplace_back(key, app->add_option("--" + key, values[key], help));
  }

  std::map<std::string, std::string> given() const {
    std::map<std::string, std::string> out;
    for (const auto& [key, opt] : options)
      if (opt->count() > 0) out[key] = values.at(key);
    return out;
  }
};

int dump_propositions(const std::string& path, std::ostream& out, std::ostream& err) {
  std::vector<kvd::CorpusEntry> entries;
  try {
    if (path.size() > 6 && path.substr(path.size() - 6) == ".jsonl") {
      entries = kvd::read_corpus_file(path);
    } else {
      std::ifstream in(path);
      if (!in) throw std::runtime_error("cannot open " + path);
      kvd::CorpusEntry e;
      e.document = kvd::parse_conllu(in, {}, &e.warnings);
      entries.push_back(std::move(e));
    }
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return 1;
  }
  for (const auto& e : entries) {
    if (!e.document) {
      err << "line " << e.line << ": " << e.error << '\n';
      continue;
    }
    const auto props = kvd::build_propositions(*e.document);
    if (!e.document->doc_id.empty()) out << "# doc_id = " << e.document->doc_id << '\n';
    for (std::size_t s = 0; s < props.trees.size(); ++s) {
      out << "# sentence " << s << ": " << e.document->sentences[s].text() << '\n';
      out << kvd::dump_tree(props.trees[s], props);
    }
  }
  return 0;
}

int validate_corpus(const std::string& path, std::ostream& out) {
  std::vector<kvd::CorpusEntry> entries;
  try {
    entries = kvd::read_corpus_file(path);
  } catch (const std::exception& ex) {
    out << "error: " << ex.what() << '\n';
    return 1;
  }
  std::size_t problems = 0;
  for (const auto& e : entries) {
    if (!e.document) {
      out << "line " << e.line << ": " << e.error << '\n';
      ++problems;
      continue;
    }
    for (const auto& w : e.warnings) out << e.document->doc_id << ": warning: " << w << '\n';
    for (const auto& d : kvd::validate_document(*e.document)) {
      out << e.document->doc_id;
      if (d.sentence_id) out << " sentence " << *d.sentence_id;
      out << ": " << d.message << '\n';
      ++problems;
    }
  }
  out << entries.size() << " documents, " << problems << " problems\n";
  return problems == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extractive summarisation with a working-memory reading simulation"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Summarise a corpus and write summaries, metrics and traces");
  FlagSet flags;
  flags.add(run_cmd, "corpus", "JSON Lines corpus (one document per line)");
  flags.add(run_cmd, "system", "treekvd|graphkvd|fullgraph|textrank|lead|random|random-wgt");
  flags.add(run_cmd, "selector", "knapsack|greedy|oracle");
  flags.add(run_cmd, "wm", "working-memory capacity in propositions (default 50)");
  flags.add(run_cmd, "recall-limit", "maximum recalled path length R (default 5)");
  flags.add(run_cmd, "persistence", "maximum tree persistence (default 5)");
  flags.add(run_cmd, "early-stop", "recall search cut-off (default 0.5)");
  flags.add(run_cmd, "scoring", "tree|freq|eigen (default tree)");
  flags.add(run_cmd, "gamma", "neighbour decay factor (default 0.01)");
  flags.add(run_cmd, "enrich-k", "enrichment fan-out (default 2)");
  flags.add(run_cmd, "window", "sentence window for graph baselines (default 50)");
  flags.add(run_cmd, "seed", "seed for the random baselines (default 13)");
  flags.add(run_cmd, "budget", "target summary length W in tokens (default 190)");
  flags.add(run_cmd, "sigma", "budget tolerance (default 50)");
  flags.add(run_cmd, "jobs", "worker threads (default 1)");
  flags.add(run_cmd, "out", "output directory (default out)");
  flags.add(run_cmd, "stopwords-path", "replacement stopword list");
  flags.add(run_cmd, "drop-adjectives", "true|false (default true)");
  flags.add(run_cmd, "bin-width", "RedRL_D bin width as a fraction (default 0.1)");
  bool trace = false;
  run_cmd->add_flag("--trace", trace, "also write trace.jsonl");
  std::string config_path;
  run_cmd->add_option("--config", config_path, "key = value file; its settings override flags");

  auto* compare_cmd = app.add_subcommand("compare", "Merge metrics of several runs side by side");
  std::vector<std::string> run_dirs;
  std::string compare_out = "-";
  compare_cmd->add_option("runs", run_dirs, "run output directories")->required();
  compare_cmd->add_option("--out", compare_out, "output CSV (default stdout)");

  auto* props_cmd = app.add_subcommand("props", "Print proposition trees of a CoNLL-U file or corpus");
  std::string props_path;
  props_cmd->add_option("input", props_path, "CoNLL-U or JSON Lines file")->required();

  auto* validate_cmd = app.add_subcommand("validate", "Check a corpus for structural problems");
  std::string validate_path;
  validate_cmd->add_option("corpus", validate_path, "JSON Lines corpus")->required();

  CLI11_PARSE(app, argc, argv);

  if (*run_cmd) {
    kvd::RunConfig config;
    try {
      kvd::apply_config(config, flags.given());
      if (trace) config.trace = true;
      if (!config_path.empty()) kvd::apply_config(config, kvd::read_config_file(config_path));
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
    if (config.corpus.empty()) {
      std::cerr << "error: --corpus is required\n";
      return 2;
    }
    return kvd::run(config, std::cerr);
  }
  if (*compare_cmd) {
    std::ostream& sink = compare_out == "-" ? std::cout : std::cerr;
    return kvd::compare(run_dirs, compare_out, sink);
  }
  if (*props_cmd) return dump_propositions(props_path, std::cout, std::cerr);
  if (*validate_cmd) return validate_corpus(validate_path, std::cout);
  return 0;
}
