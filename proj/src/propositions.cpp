#include "kvd/propositions.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

namespace kvd {
namespace {

std::string_view base_relation(std::string_view deprel) {
  const auto colon = deprel.find(':');
  return colon == std::string_view::npos ? deprel : deprel.substr(0, colon);
}

template <std::size_t N>
bool one_of(std::string_view value, const std::array<std::string_view, N>& set) {
  return std::find(set.begin(), set.end(), value) != set.end();
}

constexpr std::array<std::string_view, 7> kClausalRelations = {"root", "ccomp", "xcomp", "advcl",
                                                               "acl",  "csubj", "parataxis"};
constexpr std::array<std::string_view, 10> kNominalRelations = {
    "nsubj", "obj", "iobj", "obl", "vocative", "expl", "dislocated", "nmod", "appos", "nummod"};
constexpr std::array<std::string_view, 7> kFunctionWordTags = {"ADP", "AUX", "CCONJ", "SCONJ",
                                                               "DET", "PART", "PUNCT"};
constexpr std::array<std::string_view, 10> kModifierRelations = {"amod", "det",    "case",  "mark", "aux",
                                                                 "cop",  "advmod", "nummod", "punct", "clf"};
constexpr std::array<std::string_view, 4> kMultiwordRelations = {"fixed", "flat", "compound", "goeswith"};

bool is_clausal_predicate(const DepNode& n) {
  return n.upos == "VERB" || n.upos == "AUX" || one_of(base_relation(n.deprel), kClausalRelations);
}

bool has_clausal_ancestor(const DepTree& tree, int u) {
  for (int a = tree.nodes[u].parent; a >= 0; a = tree.nodes[a].parent)
    if (is_clausal_predicate(tree.nodes[a])) return true;
  return false;
}

bool should_merge(const DepTree& tree, int u, int v) {
  const DepNode& head = tree.nodes[u];
  const DepNode& dep = tree.nodes[v];
  const auto dep_rel = base_relation(dep.deprel);
  // cc must survive for conjunction promotion.
  if (dep_rel == "cc") return false;
  if (dep.upos == "PUNCT") return true;
  if (one_of(dep_rel, kMultiwordRelations)) return true;
  if (!has_clausal_ancestor(tree, u)) return false;

  const bool function_word = one_of(std::string_view(dep.upos), kFunctionWordTags);
  const bool discourse = dep_rel == "discourse" && dep.upos != "ADV";
  if (one_of(base_relation(head.deprel), kNominalRelations) && (function_word || discourse)) return true;
  return dep.positions.size() == 1 && one_of(dep_rel, kModifierRelations);
}

void sort_children(DepTree& tree, int u) {
  auto& kids = tree.nodes[u].children;
  std::sort(kids.begin(), kids.end(),
            [&](int a, int b) { return tree.nodes[a].anchor < tree.nodes[b].anchor; });
}

void merge_into(DepTree& tree, int u, int v) {
  DepNode& head = tree.nodes[u];
  DepNode& dep = tree.nodes[v];
  std::vector<std::size_t> merged;
  merged.reserve(head.positions.size() + dep.positions.size());
  std::merge(head.positions.begin(), head.positions.end(), dep.positions.begin(), dep.positions.end(),
             std::back_inserter(merged));
  head.positions = std::move(merged);
  std::erase(head.children, v);
  for (int c : dep.children) {
    tree.nodes[c].parent = u;
    head.children.push_back(c);
  }
  dep.children.clear();
  dep.alive = false;
  dep.parent = -1;
  sort_children(tree, u);
}

std::vector<int> postorder(const DepTree& tree) {
  std::vector<int> order;
  if (tree.root < 0) return order;
  std::vector<std::pair<int, std::size_t>> stack{{tree.root, 0}};
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    const auto& kids = tree.nodes[node].children;
    if (next < kids.size()) {
      const int child = kids[next++];
      stack.emplace_back(child, 0);
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }
  return order;
}

std::size_t depth_of(const DepTree& tree, int u) {
  std::size_t d = 0;
  for (int a = tree.nodes[u].parent; a >= 0; a = tree.nodes[a].parent) ++d;
  return d;
}

std::string node_text(const DepNode& node, const Sentence& sentence) {
  std::string out;
  for (auto pos : node.positions) {
    if (!out.empty()) out += ' ';
    out += sentence.tokens[pos].form;
  }
  return out;
}

Functor make_functor(FunctorKind kind, const DepNode& node, const Sentence& sentence) {
  Functor f;
  f.kind = kind;
  f.tokens.reserve(node.positions.size());
  for (auto pos : node.positions) f.tokens.push_back(sentence.tokens[pos]);
  return f;
}

}  // namespace

std::string Functor::text() const {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t.form;
  }
  return out;
}

DepTree DepTree::from_sentence(const Sentence& sentence) {
  if (auto problem = tree_problem(sentence)) throw std::invalid_argument("not a dependency tree: " + *problem);
  DepTree tree;
  const std::size_t n = sentence.tokens.size();
  tree.nodes.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Token& t = sentence.tokens[i];
    DepNode& node = tree.nodes[i];
    node.positions = {i};
    node.anchor = i;
    node.upos = t.upos;
    node.deprel = t.deprel;
    node.parent = t.head - 1;
    if (t.head == 0) tree.root = static_cast<int>(i);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (tree.nodes[i].parent >= 0) tree.nodes[tree.nodes[i].parent].children.push_back(static_cast<int>(i));
  return tree;
}

std::size_t DepTree::alive_count() const {
  return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const DepNode& n) { return n.alive; }));
}

std::string DepTree::debug_string(const Sentence& sentence) const {
  std::function<std::string(int)> render = [&](int u) {
    std::string out = node_text(nodes[u], sentence);
    if (!nodes[u].children.empty()) {
      out += '(';
      for (std::size_t i = 0; i < nodes[u].children.size(); ++i) {
        if (i > 0) out += ',';
        out += render(nodes[u].children[i]);
      }
      out += ')';
    }
    return out;
  };
  return root < 0 ? std::string{} : render(root);
}

DepTree merge_pass(DepTree tree) {
  for (int u : postorder(tree)) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v : tree.nodes[u].children) {
        if (should_merge(tree, u, v)) {
          merge_into(tree, u, v);
          changed = true;
          break;
        }
      }
    }
  }
  return tree;
}

DepTree promote_conjunctions(DepTree tree) {
  std::vector<int> ccs;
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const DepNode& n = tree.nodes[i];
    if (n.alive && n.parent >= 0 && base_relation(n.deprel) == "cc") ccs.push_back(static_cast<int>(i));
  }
  std::vector<std::size_t> depth(tree.nodes.size(), 0);
  for (int v : ccs) depth[v] = depth_of(tree, v);
  std::stable_sort(ccs.begin(), ccs.end(), [&](int a, int b) {
    if (depth[a] != depth[b]) return depth[a] > depth[b];
    return tree.nodes[a].anchor < tree.nodes[b].anchor;
  });

  for (int v : ccs) {
    DepNode& cc = tree.nodes[v];
    const int w = cc.parent;
    if (w < 0) continue;
    const bool under_conjunct = base_relation(tree.nodes[w].deprel) == "conj" && tree.nodes[w].parent >= 0;
    const int u = under_conjunct ? tree.nodes[w].parent : w;

    std::erase(tree.nodes[w].children, v);

    const int up = tree.nodes[u].parent;
    if (up >= 0) {
      auto& siblings = tree.nodes[up].children;
      std::replace(siblings.begin(), siblings.end(), u, v);
      sort_children(tree, up);
    } else {
      tree.root = v;
    }
    cc.parent = up;
    cc.deprel = tree.nodes[u].deprel;

    std::vector<int> moved{u};
    auto& u_kids = tree.nodes[u].children;
    for (int c : u_kids)
      if (base_relation(tree.nodes[c].deprel) == "conj") moved.push_back(c);
    std::erase_if(u_kids, [&](int c) { return base_relation(tree.nodes[c].deprel) == "conj"; });
    for (int m : moved) {
      tree.nodes[m].parent = v;
      cc.children.push_back(m);
    }
    sort_children(tree, v);
  }
  return tree;
}

PropositionTree extract_propositions(const DepTree& tree, const Sentence& sentence, PropId first_id,
                                     std::vector<Proposition>& out) {
  PropositionTree result;
  if (tree.root < 0) return result;

  std::vector<int> preorder;
  std::vector<int> stack{tree.root};
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    preorder.push_back(u);
    const auto& kids = tree.nodes[u].children;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }

  const bool single_node = tree.nodes[tree.root].children.empty();
  std::unordered_map<int, PropId> id_of;
  PropId next = first_id;
  for (int u : preorder)
    if (single_node || !tree.nodes[u].children.empty()) id_of[u] = next++;

  for (int u : preorder) {
    auto found = id_of.find(u);
    if (found == id_of.end()) continue;
    const DepNode& node = tree.nodes[u];
    Proposition p;
    p.id = found->second;
    p.sentence_id = sentence.sentence_id;
    p.section_id = sentence.section_id;
    p.degenerate = single_node;
    p.predicate = make_functor(FunctorKind::Predicate, node, sentence);
    for (int c : node.children) {
      const DepNode& child = tree.nodes[c];
      if (child.children.empty()) {
        p.args.push_back(make_functor(FunctorKind::Literal, child, sentence));
      } else {
        Functor ptr;
        ptr.kind = FunctorKind::Pointer;
        ptr.target = id_of.at(c);
        result.edges.emplace_back(p.id, ptr.target);
        p.args.push_back(std::move(ptr));
      }
    }
    result.nodes.push_back(p.id);
    out.push_back(std::move(p));
  }
  result.root = id_of.at(tree.root);
  return result;
}

PropositionTree build_sentence_propositions(const Sentence& sentence, PropId first_id,
                                            std::vector<Proposition>& out) {
  DepTree tree = promote_conjunctions(merge_pass(DepTree::from_sentence(sentence)));
  return extract_propositions(tree, sentence, first_id, out);
}

DocumentPropositions build_propositions(const Document& doc) {
  DocumentPropositions result;
  result.trees.reserve(doc.sentences.size());
  for (const auto& sentence : doc.sentences) {
    const auto first = static_cast<PropId>(result.props.size());
    result.trees.push_back(build_sentence_propositions(sentence, first, result.props));
  }
  return result;
}

std::string format_proposition(const Proposition& p) {
  std::string out = p.predicate.text() + '(';
  for (std::size_t i = 0; i < p.args.size(); ++i) {
    if (i > 0) out += ',';
    const Functor& a = p.args[i];
    out += a.kind == FunctorKind::Pointer ? "$" + std::to_string(a.target + 1) : a.text();
  }
  out += ')';
  return out;
}

std::string dump_tree(const PropositionTree& tree, const DocumentPropositions& props) {
  if (tree.nodes.empty()) return {};
  std::unordered_map<PropId, std::vector<PropId>> children;
  for (const auto& [parent, child] : tree.edges) children[parent].push_back(child);
  std::string out;
  std::function<void(PropId, std::size_t)> visit = [&](PropId id, std::size_t depth) {
    out.append(2 * depth, ' ');
    out += std::to_string(id + 1) + ": " + format_proposition(props.at(id)) + '\n';
    if (auto it = children.find(id); it != children.end())
      for (PropId c : it->second) visit(c, depth + 1);
  };
  visit(tree.root, 0);
  return out;
}

}  // namespace kvd
