#pragma once
// Compiles dependency trees into proposition trees.
//
// A sentence's dependency tree is first collapsed bottom-up (function words,
// single-token modifiers and multi-word expressions merge into their heads),
// coordinating conjunctions are then promoted above their conjuncts, and
// finally every non-leaf node becomes a proposition `pred(arg, ..., $N)`:
// leaf children are literal arguments, non-leaf children are pointers.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kvd/corpus.hpp"

namespace kvd {

using PropId = std::uint32_t;

enum class FunctorKind { Predicate, Literal, Pointer };

struct Functor {
  FunctorKind kind = FunctorKind::Literal;
  std::vector<Token> tokens;  // sentence order; empty for pointers
  PropId target = 0;          // pointer arguments only

  std::string text() const;
};

struct Proposition {
  PropId id = 0;
  Functor predicate;
  std::vector<Functor> args;
  std::size_t sentence_id = 0;
  std::size_t section_id = 0;
  bool degenerate = false;  // single-node sentence, no arguments
};

struct PropositionTree {
  std::vector<PropId> nodes;                      // preorder
  std::vector<std::pair<PropId, PropId>> edges;   // parent -> child
  PropId root = 0;

  std::size_t size() const { return nodes.size(); }
};

/// All propositions of a document. props[i].id == i; trees are per sentence.
struct DocumentPropositions {
  std::vector<Proposition> props;
  std::vector<PropositionTree> trees;

  const Proposition& at(PropId id) const { return props.at(id); }
  std::size_t size() const { return props.size(); }
};

// --- dependency-tree rewriting ----------------------------------------------

struct DepNode {
  std::vector<std::size_t> positions;  // 0-based token positions, ascending
  std::size_t anchor = 0;              // token that defines upos/deprel
  std::string upos;
  std::string deprel;
  int parent = -1;
  std::vector<int> children;  // ordered by anchor position
  bool alive = true;
};

/// Node i starts as token i; merged nodes stay in place with alive = false.
struct DepTree {
  std::vector<DepNode> nodes;
  int root = -1;

  static DepTree from_sentence(const Sentence& sentence);
  std::size_t alive_count() const;
  /// Canonical text form, e.g. "predicts(this model(semi - analytical),...)".
  std::string debug_string(const Sentence& sentence) const;
};

/// Bottom-up merge of dependents into heads.
DepTree merge_pass(DepTree tree);
/// Promotes cc dependents above the coordination they introduce, deepest first.
DepTree promote_conjunctions(DepTree tree);

/// Emits one proposition per non-leaf node in preorder, ids starting at
/// `first_id`. A single-node tree yields one degenerate proposition.
PropositionTree extract_propositions(const DepTree& tree, const Sentence& sentence, PropId first_id,
                                     std::vector<Proposition>& out);

/// merge_pass + promote_conjunctions + extract_propositions for one sentence.
PropositionTree build_sentence_propositions(const Sentence& sentence, PropId first_id,
                                            std::vector<Proposition>& out);

DocumentPropositions build_propositions(const Document& doc);

/// `pred(arg,...,$N)` for one proposition; pointers print as 1-based ids.
std::string format_proposition(const Proposition& p);

/// Indented dump of a tree, one `N: pred(args)` line per proposition.
std::string dump_tree(const PropositionTree& tree, const DocumentPropositions& props);

}  // namespace kvd
