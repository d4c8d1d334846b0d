#include "kvd/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace kvd {
namespace {

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      cols.push_back(line.substr(start));
      return cols;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

bool parse_int(std::string_view s, int& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

struct PendingSentence {
  std::vector<Token> tokens;
  std::size_t first_line = 0;
};

class ConlluReader {
 public:
  ConlluReader(const ParseOptions& options, std::vector<std::string>* warnings)
      : options_(options), warnings_(warnings) {}

  Document read(std::istream& in) {
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
      ++line_no;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      if (trim(raw).empty()) {
        flush();
        continue;
      }
      if (raw.front() == '#') {
        comment(raw);
        continue;
      }
      token_line(raw, line_no);
    }
    flush();
    return std::move(doc_);
  }

 private:
  void comment(const std::string& line) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) return;
    const std::string key = trim(std::string_view(line).substr(1, eq - 1));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "doc_id") {
      doc_.doc_id = std::move(value);
    } else if (key == "section") {
      const std::size_t at = doc_.sentences.size();
      doc_.sections.push_back(Section{std::move(value), at, at});
    } else if (key == "reference") {
      doc_.reference = std::move(value);
    }
  }

  void token_line(const std::string& line, std::size_t line_no) {
    const auto cols = split_tabs(line);
    if (cols.size() != 10)
      throw ParseError(line_no, "expected 10 tab-separated columns, found " + std::to_string(cols.size()));
    const std::string_view id = cols[0];
    if (id.find('-') != std::string_view::npos || id.find('.') != std::string_view::npos) return;

    if (pending_.tokens.empty()) pending_.first_line = line_no;
    Token tok;
    if (!parse_int(id, tok.index)) throw ParseError(line_no, "invalid token id '" + std::string(id) + "'");
    if (tok.index != static_cast<int>(pending_.tokens.size()) + 1)
      throw ParseError(line_no, "token ids must be consecutive starting at 1");
    if (!parse_int(cols[6], tok.head) || tok.head < 0)
      throw ParseError(line_no, "invalid head '" + std::string(cols[6]) + "'");
    tok.form = std::string(cols[1]);
    tok.lemma = cols[2] == "_" ? lowercase(tok.form) : std::string(cols[2]);
    tok.upos = std::string(cols[3]);
    tok.deprel = std::string(cols[7]);
    pending_.tokens.push_back(std::move(tok));
  }

  void flush() {
    if (pending_.tokens.empty()) return;
    Sentence sentence;
    sentence.tokens = std::move(pending_.tokens);
    pending_.tokens.clear();
    ++input_sentences_;

    if (auto problem = tree_problem(sentence)) {
      if (options_.invalid_trees == InvalidTreePolicy::Fail)
        throw StructuralError(input_sentences_ - 1, pending_.first_line, *problem);
      if (warnings_ != nullptr) {
        warnings_->push_back("dropped sentence " + std::to_string(input_sentences_ - 1) + " (line " +
                             std::to_string(pending_.first_line) + "): " + *problem);
      }
      return;
    }

    if (doc_.sections.empty()) doc_.sections.push_back(Section{options_.default_section, 0, 0});
    sentence.sentence_id = doc_.sentences.size();
    sentence.section_id = doc_.sections.size() - 1;
    doc_.sentences.push_back(std::move(sentence));
    doc_.sections.back().end = doc_.sentences.size();
  }

  const ParseOptions& options_;
  std::vector<std::string>* warnings_;
  Document doc_;
  PendingSentence pending_;
  std::size_t input_sentences_ = 0;
};

}  // namespace

std::size_t Sentence::root_position() const {
  for (std::size_t i = 0; i < tokens.size(); ++i)
    if (tokens[i].head == 0) return i;
  return tokens.size();
}

std::string Sentence::text() const {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t.form;
  }
  return out;
}

std::size_t Document::token_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.tokens.size();
  return n;
}

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

StructuralError::StructuralError(std::size_t sentence, std::size_t line, const std::string& message)
    : std::runtime_error("sentence " + std::to_string(sentence) + " (line " + std::to_string(line) +
                         "): " + message),
      sentence_(sentence),
      line_(line) {}

Document parse_conllu(std::istream& in, const ParseOptions& options, std::vector<std::string>* warnings) {
  return ConlluReader(options, warnings).read(in);
}

Document parse_conllu(const std::string& text, const ParseOptions& options, std::vector<std::string>* warnings) {
  std::istringstream in(text);
  return parse_conllu(in, options, warnings);
}

void write_conllu(std::ostream& out, const Document& doc) {
  if (!doc.doc_id.empty()) out << "# doc_id = " << doc.doc_id << '\n';
  if (doc.reference) {
    std::string ref = *doc.reference;
    std::replace(ref.begin(), ref.end(), '\n', ' ');
    out << "# reference = " << ref << '\n';
  }
  std::size_t next_section = 0;
  auto emit_sections_starting_at = [&](std::size_t sentence) {
    while (next_section < doc.sections.size() && doc.sections[next_section].begin == sentence) {
      out << "# section = " << doc.sections[next_section].name << '\n';
      ++next_section;
    }
  };
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    emit_sections_starting_at(s);
    for (const auto& t : doc.sentences[s].tokens) {
      out << t.index << '\t' << t.form << '\t' << t.lemma << '\t' << t.upos << "\t_\t_\t" << t.head << '\t'
          << t.deprel << "\t_\t_\n";
    }
    out << '\n';
  }
  emit_sections_starting_at(doc.sentences.size());
}

std::string to_conllu(const Document& doc) {
  std::ostringstream out;
  write_conllu(out, doc);
  return out.str();
}

std::optional<std::string> tree_problem(const Sentence& sentence) {
  const auto& toks = sentence.tokens;
  const int n = static_cast<int>(toks.size());
  if (n == 0) return "sentence has no tokens";
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const auto& t = toks[i];
    if (t.head < 0 || t.head > n) return "token " + std::to_string(i + 1) + " has out-of-range head";
    if (t.head == i + 1) return "token " + std::to_string(i + 1) + " is its own head (cycle)";
    if (t.head == 0) ++roots;
  }
  if (roots != 1) return "expected exactly one root, found " + std::to_string(roots);
  // Every token must reach the root within n steps.
  for (int i = 0; i < n; ++i) {
    int cur = i + 1;
    int steps = 0;
    while (cur != 0 && steps <= n) {
      cur = toks[cur - 1].head;
      ++steps;
    }
    if (cur != 0) return "head cycle through token " + std::to_string(i + 1);
  }
  return std::nullopt;
}

std::vector<Diagnostic> validate_document(const Document& doc) {
  std::vector<Diagnostic> out;
  const std::size_t n = doc.sentences.size();

  for (std::size_t s = 0; s < n; ++s) {
    const auto& sent = doc.sentences[s];
    if (sent.sentence_id != s)
      out.push_back({s, "sentence_id " + std::to_string(sent.sentence_id) + " does not match position"});
    if (sent.tokens.empty()) {
      out.push_back({s, "sentence has no tokens"});
      continue;
    }
    bool token_ok = true;
    for (std::size_t i = 0; i < sent.tokens.size(); ++i) {
      const auto& t = sent.tokens[i];
      if (t.index != static_cast<int>(i) + 1 || t.deprel.empty()) {
        out.push_back({s, "token " + std::to_string(i + 1) + " has an invalid index or empty deprel"});
        token_ok = false;
        break;
      }
    }
    if (token_ok) {
      if (auto problem = tree_problem(sent)) out.push_back({s, *problem});
    }
    if (sent.section_id >= doc.sections.size()) {
      out.push_back({s, "section_id out of range"});
    } else {
      const auto& sec = doc.sections[sent.section_id];
      if (s < sec.begin || s >= sec.end)
        out.push_back({s, "sentence lies outside its section '" + sec.name + "'"});
    }
  }

  std::vector<std::size_t> order(doc.sections.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return doc.sections[a].begin < doc.sections[b].begin; });
  std::size_t covered_until = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& sec = doc.sections[order[k]];
    if (sec.begin > sec.end || sec.end > n) {
      out.push_back({std::nullopt, "section '" + sec.name + "' has an invalid range"});
      continue;
    }
    if (k > 0) {
      const auto& prev = doc.sections[order[k - 1]];
      if (sec.begin < prev.end)
        out.push_back({std::nullopt, "sections '" + prev.name + "' and '" + sec.name + "' overlap"});
    }
    if (sec.begin > covered_until) break;
    covered_until = std::max(covered_until, sec.end);
  }
  if (covered_until < n) out.push_back({std::nullopt, "sections do not cover every sentence"});
  return out;
}

Document document_from_json(const std::string& json_line, std::vector<std::string>* warnings) {
  const auto j = nlohmann::json::parse(json_line);
  if (!j.is_object()) throw std::runtime_error("record is not a JSON object");
  Document doc;
  doc.doc_id = j.at("doc_id").get<std::string>();
  if (auto it = j.find("reference"); it != j.end() && !it->is_null()) doc.reference = it->get<std::string>();

  ParseOptions options;
  options.invalid_trees = InvalidTreePolicy::Drop;
  for (const auto& sec : j.at("sections")) {
    const std::string name = sec.at("name").get<std::string>();
    Document part = parse_conllu(sec.at("conllu").get<std::string>(), options, warnings);
    Section section{name, doc.sentences.size(), doc.sentences.size()};
    for (auto& sentence : part.sentences) {
      sentence.sentence_id = doc.sentences.size();
      sentence.section_id = doc.sections.size();
      doc.sentences.push_back(std::move(sentence));
    }
    section.end = doc.sentences.size();
    doc.sections.push_back(std::move(section));
  }
  return doc;
}

std::string document_to_json(const Document& doc) {
  nlohmann::json j;
  j["doc_id"] = doc.doc_id;
  j["sections"] = nlohmann::json::array();
  for (const auto& sec : doc.sections) {
    Document part;
    for (std::size_t s = sec.begin; s < sec.end; ++s) part.sentences.push_back(doc.sentences[s]);
    j["sections"].push_back({{"name", sec.name}, {"conllu", to_conllu(part)}});
  }
  j["reference"] = doc.reference ? nlohmann::json(*doc.reference) : nlohmann::json(nullptr);
  return j.dump();
}

std::vector<CorpusEntry> read_corpus(std::istream& in) {
  std::vector<CorpusEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    CorpusEntry entry;
    entry.line = line_no;
    try {
      entry.document = document_from_json(line, &entry.warnings);
    } catch (const std::exception& e) {
      entry.error = e.what();
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<CorpusEntry> read_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus '" + path + "'");
  return read_corpus(in);
}

}  // namespace kvd
