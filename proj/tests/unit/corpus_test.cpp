#include <sstream>
#include <string>

#include "doctest.h"
#include "kvd/corpus.hpp"

using namespace kvd;

namespace {

const char* kTwoSentences =
    "# doc_id = d1\n"
    "# section = introduction\n"
    "1\tcells\tcell\tNOUN\t_\t_\t2\tnsubj\t_\t_\n"
    "2\tgrow\tgrow\tVERB\t_\t_\t0\troot\t_\t_\n"
    "\n"
    "# section = results\n"
    "1\twe\twe\tPRON\t_\t_\t2\tnsubj\t_\t_\n"
    "2\tsaw\tsee\tVERB\t_\t_\t0\troot\t_\t_\n"
    "3-4\tit's\t_\t_\t_\t_\t_\t_\t_\t_\n"
    "3\tit\tit\tPRON\t_\t_\t2\tobj\t_\t_\n"
    "3.1\tx\tx\tX\t_\t_\t_\t_\t_\t_\n"
    "4\tagain\t_\tADV\t_\t_\t2\tadvmod\t_\t_\n"
    "\n";

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("conllu parse reads metadata, sections and skips ranges") {
  const Document doc = parse_conllu(std::string(kTwoSentences));
  CHECK(doc.doc_id == "d1");
  REQUIRE(doc.sentences.size() == 2);
  REQUIRE(doc.sections.size() == 2);
  CHECK(doc.sections[0].name == "introduction");
  CHECK(doc.sections[1].name == "results");
  CHECK(doc.sections[1].begin == 1);
  CHECK(doc.sections[1].end == 2);
  CHECK(doc.sentences[1].tokens.size() == 4);
  CHECK(doc.sentences[1].tokens[3].lemma == "again");
  CHECK(doc.sentences[1].section_id == 1);
  CHECK(doc.sentences[1].root_position() == 1);
  CHECK(doc.token_count() == 6);
  CHECK(validate_document(doc).empty());
}

TEST_CASE("conllu round trip") {
  const Document doc = parse_conllu(std::string(kTwoSentences));
  CHECK(parse_conllu(to_conllu(doc)) == doc);
}

TEST_CASE("json record round trip") {
  Document doc = parse_conllu(std::string(kTwoSentences));
  doc.reference = "cells grow";
  const Document back = document_from_json(document_to_json(doc));
  CHECK(back == doc);
}

TEST_CASE("wrong column count is a parse error with a line number") {
  const std::string bad = "1\tcells\tcell\tNOUN\n";
  try {
    parse_conllu(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
}

TEST_CASE("two roots are rejected or dropped by policy") {
  const std::string two_roots =
      "1\ta\ta\tNOUN\t_\t_\t0\troot\t_\t_\n"
      "2\tb\tb\tNOUN\t_\t_\t0\troot\t_\t_\n"
      "\n"
      "1\tok\tok\tNOUN\t_\t_\t0\troot\t_\t_\n"
      "\n";
  CHECK_THROWS_AS(parse_conllu(two_roots), StructuralError);
  ParseOptions drop;
  drop.invalid_trees = InvalidTreePolicy::Drop;
  std::vector<std::string> warnings;
  const Document doc = parse_conllu(two_roots, drop, &warnings);
  CHECK(doc.sentences.size() == 1);
  CHECK(warnings.size() == 1);
}

TEST_CASE("cycles and dangling heads are tree problems") {
  Sentence s;
  s.tokens = {{1, "a", "a", "NOUN", 2, "dep"}, {2, "b", "b", "NOUN", 1, "dep"}};
  CHECK(tree_problem(s).has_value());
  s.tokens = {{1, "a", "a", "NOUN", 0, "root"}, {2, "b", "b", "NOUN", 7, "dep"}};
  CHECK(tree_problem(s).has_value());
  s.tokens = {{1, "a", "a", "NOUN", 0, "root"}, {2, "b", "b", "NOUN", 1, "dep"}};
  CHECK_FALSE(tree_problem(s).has_value());
}

TEST_CASE("corpus reader reports bad lines per entry") {
  Document doc = parse_conllu(std::string(kTwoSentences));
  std::stringstream in;
  in << document_to_json(doc) << "\n{not json\n" << R"({"doc_id": "x", "sections": 3})" << "\n";
  const auto entries = read_corpus(in);
  REQUIRE(entries.size() == 3);
  CHECK(entries[0].document.has_value());
  CHECK(entries[0].error.empty());
  CHECK_FALSE(entries[1].document.has_value());
  CHECK_FALSE(entries[1].error.empty());
  CHECK(entries[1].line == 2);
  CHECK_FALSE(entries[2].document.has_value());
}

TEST_CASE("missing corpus file throws") {
  CHECK_THROWS(read_corpus_file("/nonexistent/corpus.jsonl"));
}

}
