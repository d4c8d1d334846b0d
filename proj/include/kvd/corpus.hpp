#pragma once
// Document model and CoNLL-U / JSON Lines corpus reading.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kvd {

struct Token {
  int index = 0;  // 1-based position within the sentence
  std::string form;
  std::string lemma;
  std::string upos;
  int head = 0;  // index of the head token; 0 marks the syntactic root
  std::string deprel;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::size_t sentence_id = 0;  // global position in the document
  std::size_t section_id = 0;

  /// 0-based position of the root token, or size() if there is none.
  std::size_t root_position() const;
  std::string text() const;

  bool operator==(const Sentence&) const = default;
};

struct Section {
  std::string name;
  std::size_t begin = 0;  // sentence range [begin, end)
  std::size_t end = 0;

  bool operator==(const Section&) const = default;
};

struct Document {
  std::string doc_id;
  std::vector<Section> sections;
  std::vector<Sentence> sentences;
  std::optional<std::string> reference;

  std::size_t token_count() const;

  bool operator==(const Document&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class StructuralError : public std::runtime_error {
 public:
  StructuralError(std::size_t sentence, std::size_t line, const std::string& message);
  std::size_t sentence() const { return sentence_; }
  std::size_t line() const { return line_; }

 private:
  std::size_t sentence_;
  std::size_t line_;
};

enum class InvalidTreePolicy { Fail, Drop };

struct ParseOptions {
  InvalidTreePolicy invalid_trees = InvalidTreePolicy::Fail;
  std::string default_section = "body";
};

/// Parses CoNLL-U. `# doc_id = `, `# section = ` and `# reference = ` comments
/// carry metadata; multiword ranges ("3-4") and empty nodes ("3.1") are
/// skipped. A "_" lemma falls back to the lowercased form. Sentences whose
/// heads do not form a single-rooted tree either throw StructuralError or are
/// dropped (with a message appended to `warnings`) depending on the policy.
Document parse_conllu(std::istream& in, const ParseOptions& options = {},
                      std::vector<std::string>* warnings = nullptr);
Document parse_conllu(const std::string& text, const ParseOptions& options = {},
                      std::vector<std::string>* warnings = nullptr);

void write_conllu(std::ostream& out, const Document& doc);
std::string to_conllu(const Document& doc);

/// Describes why a sentence is not a single-rooted tree, if it is not.
std::optional<std::string> tree_problem(const Sentence& sentence);

struct Diagnostic {
  std::optional<std::size_t> sentence_id;
  std::string message;
};

/// One diagnostic per invariant violation; empty when the document is valid.
std::vector<Diagnostic> validate_document(const Document& doc);

// --- JSON Lines corpus container -------------------------------------------
// {"doc_id": str, "sections": [{"name": str, "conllu": str}], "reference": str|null}

struct CorpusEntry {
  std::size_t line = 0;
  std::optional<Document> document;
  std::string error;  // set when the line could not be turned into a document
  std::vector<std::string> warnings;
};

/// Reads every line; malformed documents are reported per entry rather than
/// aborting the corpus. Invalid sentence trees are dropped with a warning.
std::vector<CorpusEntry> read_corpus(std::istream& in);
std::vector<CorpusEntry> read_corpus_file(const std::string& path);

/// Parses one container record.
Document document_from_json(const std::string& json_line, std::vector<std::string>* warnings = nullptr);
std::string document_to_json(const Document& doc);

}  // namespace kvd
