#pragma once
// Working-memory machinery shared by both simulators: the memory tree,
// closeness-based rooting, capacity pruning and the score-update strategies.
//
// Tie-breaking: wherever proposition ids tie, the most recent proposition
// (highest id) wins. This is the leading-edge preference for fresh content.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kvd/propositions.hpp"

namespace kvd {

enum class ScoringStrategy { Tree, Freq, Eigen };

std::string_view to_string(ScoringStrategy s);
std::optional<ScoringStrategy> parse_scoring(std::string_view name);

struct SimulationParams {
  std::size_t wm = 50;           // working-memory capacity
  std::size_t recall_limit = 5;  // R, nodes per recalled path
  std::size_t persistence = 5;   // Psi
  double gamma = 0.01;           // neighbour decay (GraphKvD)
  std::size_t enrich_k = 2;      // enrichment fan-out (GraphKvD)
  double early_stop = 0.5;       // recall search cut-off (TreeKvD)
  ScoringStrategy scoring = ScoringStrategy::Tree;

  /// Throws std::invalid_argument naming the first bad field.
  void validate() const;
};

/// Undirected adjacency with sorted neighbour lists.
using Adjacency = std::map<PropId, std::vector<PropId>>;

/// (reachable - 1) / sum of hop distances to reachable nodes; 0 if isolated.
double closeness_centrality(const Adjacency& graph, PropId node);

/// Exact closeness as (reachable - 1, distance sum), for tie-free comparison.
std::pair<std::size_t, std::size_t> closeness_ratio(const Adjacency& graph, PropId node);

/// True when closeness(a) > closeness(b), compared exactly.
bool closeness_greater(std::pair<std::size_t, std::size_t> a, std::pair<std::size_t, std::size_t> b);

struct Selection;

class MemoryTree {
 public:
  MemoryTree() = default;
  /// Builds a tree from nodes and undirected edges; throws if not a tree.
  MemoryTree(const std::vector<PropId>& nodes, const std::vector<std::pair<PropId, PropId>>& edges, PropId root);
  static MemoryTree from_proposition_tree(const PropositionTree& tree);

  bool empty() const { return adj_.empty(); }
  std::size_t size() const { return adj_.size(); }
  bool contains(PropId id) const { return adj_.count(id) != 0; }
  PropId root() const { return root_; }
  void set_root(PropId root);

  const Adjacency& adjacency() const { return adj_; }
  std::vector<PropId> nodes() const;
  /// Undirected edges as (min, max), sorted.
  std::vector<std::pair<PropId, PropId>> edges() const;
  /// parent -> child edges oriented from the root, sorted.
  std::vector<std::pair<PropId, PropId>> directed_edges() const;

  std::map<PropId, PropId> parents() const;                   // root absent
  std::map<PropId, std::vector<PropId>> children() const;     // ascending ids
  std::map<PropId, std::size_t> depths() const;               // root = 1
  std::map<PropId, std::size_t> subtree_sizes() const;

  /// Connected, acyclic and rooted inside the node set.
  bool is_valid() const;

  /// Adds a node or an edge; used while splicing trees together.
  void add_node(PropId id);
  void add_edge(PropId a, PropId b);

  bool operator==(const MemoryTree&) const = default;

 private:
  friend Selection memory_select(std::size_t wm, const MemoryTree& tree);
  struct Unchecked {};
  MemoryTree(Unchecked, const std::vector<PropId>& nodes, const std::vector<std::pair<PropId, PropId>>& edges,
             PropId root);

  Adjacency adj_;
  PropId root_ = 0;
};

/// Re-roots at the node of highest closeness (ties to the highest id).
MemoryTree adjust_root(MemoryTree tree);

struct Selection {
  MemoryTree kept;
  std::vector<MemoryTree> pruned;  // maximal subtrees, ordered by root id
};

/// Keeps min(wm, |tree|) nodes: the largest-subtree descent from the root to
/// a leaf, then breadth-first fill. Child ties go to the highest id.
Selection memory_select(std::size_t wm, const MemoryTree& tree);

/// |subtree(t)| / |tree| * exp(1 / depth(t)), depth(root) = 1.
double node_importance(PropId t, const MemoryTree& tree);

/// Principal eigenvector of the adjacency (power iteration on A + I,
/// L2-normalised). A single node scores 1.
std::map<PropId, double> eigenvector_centrality(const MemoryTree& tree, double tolerance = 1e-10,
                                                std::size_t max_iterations = 1000);

/// Per-node increment of one scoring strategy.
std::map<PropId, double> importance(const MemoryTree& tree, ScoringStrategy strategy);

class ScoreTable {
 public:
  ScoreTable() = default;
  explicit ScoreTable(std::size_t size) : scores_(size, 0.0) {}

  std::size_t size() const { return scores_.size(); }
  double operator[](PropId id) const { return scores_.at(id); }
  const std::vector<double>& values() const { return scores_; }
  void add(PropId id, double amount);
  double total() const;

  std::size_t cycles() const { return cycles_; }
  void next_cycle() { ++cycles_; }

 private:
  std::vector<double> scores_;
  std::size_t cycles_ = 0;
};

/// Adds the strategy's increment to every node of the tree; returns them.
std::map<PropId, double> update_scores(const MemoryTree& tree, ScoreTable& table, ScoringStrategy strategy);

}  // namespace kvd
