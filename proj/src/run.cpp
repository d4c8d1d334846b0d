#include "kvd/run.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "kvd/baselines.hpp"
#include "kvd/graphkvd.hpp"
#include "kvd/overlap.hpp"
#include "kvd/propositions.hpp"
#include "kvd/treekvd.hpp"

namespace kvd {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::pair<SystemId, std::string_view> kSystems[] = {
    {SystemId::TreeKvd, "treekvd"}, {SystemId::GraphKvd, "graphkvd"}, {SystemId::FullGraph, "fullgraph"},
    {SystemId::TextRank, "textrank"}, {SystemId::Lead, "lead"},       {SystemId::Random, "random"},
    {SystemId::RandomWgt, "random-wgt"},
};

constexpr std::pair<SelectorId, std::string_view> kSelectors[] = {
    {SelectorId::Knapsack, "knapsack"}, {SelectorId::Greedy, "greedy"}, {SelectorId::Oracle, "oracle"}};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t document_seed(std::uint64_t seed, std::string_view doc_id) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : doc_id) h = (h ^ c) * 0x100000001b3ULL;
  return splitmix64(seed ^ h);
}

std::size_t parse_size(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != value.size() || value.empty() || value[0] == '-')
    throw std::invalid_argument("config: " + key + " expects a non-negative integer, got '" + value + "'");
  return static_cast<std::size_t>(v);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != value.size() || value.empty())
    throw std::invalid_argument("config: " + key + " expects a number, got '" + value + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw std::invalid_argument("config: " + key + " expects true/false, got '" + value + "'");
}

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", fraction * 100.0);
  return buf;
}

std::string fixed(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", value);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

const char* kMetricColumns[] = {"R1", "R2", "RL", "Uniq", "RedRL", "RedRL_D", "N_S", "coverage"};

}  // namespace

std::string_view to_string(SystemId id) {
  for (const auto& [s, name] : kSystems)
    if (s == id) return name;
  return "treekvd";
}

std::string_view to_string(SelectorId id) {
  for (const auto& [s, name] : kSelectors)
    if (s == id) return name;
  return "knapsack";
}

std::optional<SystemId> parse_system(std::string_view name) {
  for (const auto& [s, n] : kSystems)
    if (n == name) return s;
  return std::nullopt;
}

std::optional<SelectorId> parse_selector(std::string_view name) {
  for (const auto& [s, n] : kSelectors)
    if (n == name) return s;
  return std::nullopt;
}

void RunConfig::validate() const {
  params.validate();
  if (sigma == 0) throw std::invalid_argument("sigma must be positive");
  if (sigma >= budget) throw std::invalid_argument("sigma must be smaller than the budget");
  if (jobs == 0) throw std::invalid_argument("jobs must be >= 1");
  if (!(bin_width > 0.0)) throw std::invalid_argument("bin width must be positive");
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(number) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

void apply_config(RunConfig& c, const std::map<std::string, std::string>& settings) {
  for (const auto& [raw_key, value] : settings) {
    std::string key = raw_key;
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "corpus") {
      c.corpus = value;
    } else if (key == "system") {
      auto s = parse_system(value);
      if (!s) throw std::invalid_argument("config: unknown system '" + value + "'");
      c.system = *s;
    } else if (key == "selector") {
      auto s = parse_selector(value);
      if (!s) throw std::invalid_argument("config: unknown selector '" + value + "'");
      c.selector = *s;
    } else if (key == "wm") {
      c.params.wm = parse_size(key, value);
    } else if (key == "recall-limit") {
      c.params.recall_limit = parse_size(key, value);
    } else if (key == "persistence") {
      c.params.persistence = parse_size(key, value);
    } else if (key == "early-stop") {
      c.params.early_stop = parse_double(key, value);
    } else if (key == "scoring") {
      auto s = parse_scoring(value);
      if (!s) throw std::invalid_argument("config: unknown scoring '" + value + "'");
      c.params.scoring = *s;
    } else if (key == "gamma") {
      c.params.gamma = parse_double(key, value);
    } else if (key == "enrich-k") {
      c.params.enrich_k = parse_size(key, value);
    } else if (key == "window") {
      c.window = parse_size(key, value);
    } else if (key == "seed") {
      c.seed = parse_size(key, value);
    } else if (key == "budget") {
      c.budget = parse_size(key, value);
    } else if (key == "sigma") {
      c.sigma = parse_size(key, value);
    } else if (key == "jobs") {
      c.jobs = parse_size(key, value);
    } else if (key == "out") {
      c.out_dir = value;
    } else if (key == "trace") {
      c.trace = parse_bool(key, value);
    } else if (key == "drop-adjectives") {
      c.drop_adjectives = parse_bool(key, value);
    } else if (key == "stopwords-path") {
      c.stopwords_path = value;
    } else if (key == "bin-width") {
      c.bin_width = parse_double(key, value);
    } else {
      throw std::invalid_argument("config: unknown key '" + raw_key + "'");
    }
  }
}

std::vector<double> system_sentence_scores(const Document& doc, const RunConfig& config,
                                           std::vector<CycleRecord>* trace, std::size_t* propositions) {
  const std::size_t n = doc.sentences.size();
  const std::uint64_t seed = document_seed(config.seed, doc.doc_id);
  OverlapOptions overlap_options;
  overlap_options.drop_adjectives = config.drop_adjectives;
  overlap_options.stopwords_path = config.stopwords_path;

  switch (config.system) {
    case SystemId::Lead: return baselines::lead_scores(n);
    case SystemId::Random: return baselines::random_scores(n, seed);
    case SystemId::RandomWgt: return baselines::random_wgt_scores(doc, seed);
    case SystemId::TextRank: {
      const StopwordSet stopwords =
          config.stopwords_path ? load_stopwords(*config.stopwords_path) : builtin_stopwords();
      return baselines::textrank_scores(doc, stopwords, config.window);
    }
    case SystemId::TreeKvd:
    case SystemId::GraphKvd:
    case SystemId::FullGraph: break;
  }

  const auto props = build_propositions(doc);
  if (propositions) *propositions = props.size();
  const OverlapModel overlap(props.props, overlap_options);
  std::vector<double> prop_scores;
  if (config.system == SystemId::FullGraph) {
    prop_scores = baselines::fullgraph_scores(props, overlap, config.window);
  } else {
    auto result = config.system == SystemId::TreeKvd ? treekvd::simulate(props, overlap, config.params)
                                                     : graphkvd::simulate(props, overlap, config.params);
    prop_scores = result.scores.values();
    if (trace) *trace = std::move(result.trace);
  }
  return sentence_scores_from_propositions(props, n, prop_scores);
}

DocumentResult summarize_document(const Document& doc, const RunConfig& config) {
  DocumentResult r;
  r.doc_id = doc.doc_id;
  if (doc.sentences.empty()) throw std::runtime_error("document has no sentences");

  std::vector<Tokens> sentence_tokens;
  std::vector<std::size_t> lengths;
  for (const auto& s : doc.sentences) {
    sentence_tokens.push_back(tokenize(s.text()));
    lengths.push_back(sentence_tokens.back().size());
  }
  const Tokens reference = doc.reference ? tokenize(*doc.reference) : Tokens{};

  if (config.selector == SelectorId::Oracle) {
    if (reference.empty()) throw std::runtime_error("oracle selector needs a reference summary");
    r.selection = oracle_select(sentence_tokens, reference, config.budget, config.sigma);
  } else {
    const bool kvd = config.system == SystemId::TreeKvd || config.system == SystemId::GraphKvd;
    const auto scores = system_sentence_scores(doc, config, kvd ? &r.trace : nullptr, &r.propositions);
    r.selection = config.selector == SelectorId::Knapsack
                      ? knapsack_select(lengths, scores, config.budget, config.sigma)
                      : greedy_select(scores, lengths, config.budget, config.sigma);
    if (kvd) r.metrics.coverage = coverage(r.trace, r.propositions);
  }

  Tokens summary;
  std::vector<Tokens> picked;
  for (auto id : r.selection.ids) {
    if (!r.text.empty()) r.text += ' ';
    r.text += doc.sentences[id].text();
    summary.insert(summary.end(), sentence_tokens[id].begin(), sentence_tokens[id].end());
    picked.push_back(sentence_tokens[id]);
  }

  r.metrics.doc_id = doc.doc_id;
  if (!reference.empty()) {
    r.metrics.r1 = rouge_n(summary, reference, 1).f1;
    r.metrics.r2 = rouge_n(summary, reference, 2).f1;
    r.metrics.rl = rouge_l(summary, reference).f1;
  }
  r.metrics.uniq = uniq(summary);
  r.metrics.red_rl = red_rl(picked);
  r.metrics.red_rl_d = red_rl_d(sentence_tokens);
  r.metrics.tokens = r.selection.tokens;
  return r;
}

RunReport run_corpus(const std::vector<CorpusEntry>& entries, const RunConfig& config) {
  config.validate();
  RunReport report;
  std::vector<std::optional<DocumentResult>> results(entries.size());
  std::vector<std::string> errors(entries.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      const auto& e = entries[i];
      if (!e.document) {
        errors[i] = "line " + std::to_string(e.line) + ": " + e.error;
        continue;
      }
      try {
        results[i] = summarize_document(*e.document, config);
      } catch (const std::exception& ex) {
        errors[i] = e.document->doc_id + ": " + ex.what();
      }
    }
  };
  const std::size_t threads = std::min(config.jobs, std::max<std::size_t>(entries.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (const auto& w : entries[i].warnings) report.messages.push_back("line " + std::to_string(entries[i].line) + ": " + w);
    if (results[i]) {
      report.documents.push_back(std::move(*results[i]));
    } else {
      ++report.failures;
      report.messages.push_back("skipped " + errors[i]);
    }
  }
  std::stable_sort(report.documents.begin(), report.documents.end(),
                   [](const DocumentResult& a, const DocumentResult& b) { return a.doc_id < b.doc_id; });

  std::vector<DocumentMetrics> rows;
  for (const auto& d : report.documents) rows.push_back(d.metrics);
  report.bins = bin_by_document_redundancy(rows, config.bin_width);
  return report;
}

void write_outputs(const RunReport& report, const RunConfig& config) {
  const fs::path dir(config.out_dir);
  fs::create_directories(dir);

  std::ofstream summaries(dir / "summaries.jsonl");
  for (const auto& d : report.documents) {
    json j;
    j["doc_id"] = d.doc_id;
    j["sentence_ids"] = d.selection.ids;
    j["text"] = d.text;
    j["n_tokens"] = d.selection.tokens;
    j["score"] = d.selection.score;
    j["infeasible"] = d.selection.infeasible;
    summaries << j.dump() << '\n';
  }

  std::ofstream csv(dir / "metrics.csv");
  csv << "doc_id";
  for (const char* col : kMetricColumns) csv << ',' << col;
  csv << ",infeasible,out_of_band\n";
  std::vector<std::vector<double>> columns(std::size(kMetricColumns));
  for (const auto& d : report.documents) {
    const auto& m = d.metrics;
    const std::optional<double> values[] = {m.r1, m.r2, m.rl, m.uniq.value, m.red_rl.value, m.red_rl_d.value,
                                            static_cast<double>(m.tokens), m.coverage};
    csv << d.doc_id;
    for (std::size_t c = 0; c < std::size(values); ++c) {
      csv << ',';
      if (!values[c]) continue;
      const bool count = c == 6;
      csv << (count ? fixed(*values[c]) : percent(*values[c]));
      columns[c].push_back(count ? *values[c] : *values[c] * 100.0);
    }
    csv << ',' << (d.selection.infeasible ? 1 : 0) << ',' << (d.selection.out_of_band ? 1 : 0) << '\n';
  }
  for (int pass = 0; pass < 2; ++pass) {
    csv << (pass == 0 ? "#mean" : "#std");
    for (const auto& col : columns) {
      csv << ',';
      if (col.empty()) continue;
      double mean = 0.0;
      for (double v : col) mean += v;
      mean /= static_cast<double>(col.size());
      if (pass == 0) {
        csv << fixed(mean);
      } else {
        double var = 0.0;
        for (double v : col) var += (v - mean) * (v - mean);
        csv << fixed(std::sqrt(var / static_cast<double>(col.size())));
      }
    }
    csv << ",,\n";
  }

  json bins = json::array();
  for (const auto& b : report.bins) {
    json j;
    j["low"] = b.low * 100.0;
    j["high"] = b.high * 100.0;
    j["count"] = b.count;
    j["RL"] = b.mean_rl ? json(*b.mean_rl * 100.0) : json(nullptr);
    j["RedRL"] = b.mean_red_rl * 100.0;
    j["N_S"] = b.mean_tokens;
    bins.push_back(j);
  }
  std::ofstream(dir / "bins.json") << bins.dump(2) << '\n';

  json meta;
  meta["corpus"] = config.corpus;
  meta["system"] = to_string(config.system);
  meta["selector"] = to_string(config.selector);
  meta["wm"] = config.params.wm;
  meta["recall_limit"] = config.params.recall_limit;
  meta["persistence"] = config.params.persistence;
  meta["early_stop"] = config.params.early_stop;
  meta["scoring"] = to_string(config.params.scoring);
  meta["gamma"] = config.params.gamma;
  meta["enrich_k"] = config.params.enrich_k;
  meta["window"] = config.window;
  meta["seed"] = config.seed;
  meta["budget"] = config.budget;
  meta["sigma"] = config.sigma;
  meta["documents"] = report.documents.size();
  meta["failures"] = report.failures;
  meta["messages"] = report.messages;
  std::ofstream(dir / "run.json") << meta.dump(2) << '\n';

  if (config.trace) {
    std::ofstream trace(dir / "trace.jsonl");
    for (const auto& d : report.documents) write_trace(trace, d.trace, d.doc_id, to_string(config.system));
  }
}

int run(const RunConfig& config, std::ostream& log) {
  try {
    config.validate();
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return 2;
  }
  std::vector<CorpusEntry> entries;
  try {
    entries = read_corpus_file(config.corpus);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return 1;
  }
  const RunReport report = run_corpus(entries, config);
  for (const auto& m : report.messages) log << "warning: " << m << '\n';
  try {
    write_outputs(report, config);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return 1;
  }
  log << "processed " << report.documents.size() << " documents, " << report.failures << " skipped; output in "
      << config.out_dir << '\n';
  return 0;
}

int compare(const std::vector<std::string>& run_dirs, const std::string& out_csv, std::ostream& log) {
  if (run_dirs.size() < 2) {
    log << "error: compare needs at least two run directories\n";
    return 2;
  }
  struct Run {
    std::string label;
    std::vector<std::string> doc_ids;
    std::vector<std::string> mean, stdev;
  };
  std::vector<Run> runs;
  for (const auto& dir : run_dirs) {
    std::ifstream in(fs::path(dir) / "metrics.csv");
    if (!in) {
      log << "error: cannot read " << (fs::path(dir) / "metrics.csv").string() << '\n';
      return 1;
    }
    Run r;
    r.label = fs::path(dir).filename().string();
    if (r.label.empty()) r.label = fs::path(dir).parent_path().filename().string();
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      auto cells = split_csv(line);
      if (cells.empty()) continue;
      if (cells[0] == "#mean") {
        r.mean.assign(cells.begin() + 1, cells.begin() + 1 + static_cast<std::ptrdiff_t>(std::size(kMetricColumns)));
      } else if (cells[0] == "#std") {
        r.stdev.assign(cells.begin() + 1, cells.begin() + 1 + static_cast<std::ptrdiff_t>(std::size(kMetricColumns)));
      } else {
        r.doc_ids.push_back(cells[0]);
      }
    }
    std::sort(r.doc_ids.begin(), r.doc_ids.end());
    runs.push_back(std::move(r));
  }
  for (std::size_t i = 1; i < runs.size(); ++i) {
    if (runs[i].doc_ids != runs[0].doc_ids) {
      log << "error: runs '" << runs[0].label << "' and '" << runs[i].label << "' cover different documents\n";
      return 1;
    }
  }

  std::ostringstream table;
  table << "metric";
  for (const auto& r : runs) table << ',' << r.label;
  table << '\n';
  for (std::size_t c = 0; c < std::size(kMetricColumns); ++c) {
    table << kMetricColumns[c];
    for (const auto& r : runs) {
      table << ',';
      if (c < r.mean.size() && !r.mean[c].empty()) table << r.mean[c] << '(' << r.stdev[c] << ')';
    }
    table << '\n';
  }
  if (out_csv.empty() || out_csv == "-") {
    log << table.str();
  } else {
    std::ofstream out(out_csv);
    if (!out) {
      log << "error: cannot write " << out_csv << '\n';
      return 1;
    }
    out << table.str();
  }
  return 0;
}

}  // namespace kvd
