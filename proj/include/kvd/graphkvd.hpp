#pragma once
// Graph-structured memory simulation: long-term memory is a weighted
// undirected proposition graph, working memory a pruned maximum spanning tree
// of the per-cycle working graph.

#include <cstddef>
#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "kvd/memory.hpp"
#include "kvd/overlap.hpp"
#include "kvd/trace.hpp"

namespace kvd::graphkvd {

/// Weight given to intra-sentence edges whose propositions share no lemma.
inline constexpr double kStructuralEdgeFloor = 1e-3;

/// Small weighted graph; the first weight written for an edge is kept.
class WeightedGraph {
 public:
  void add_node(PropId id) { adj_[id]; }
  /// Returns false when the edge already existed (its weight is unchanged).
  bool add_edge(PropId a, PropId b, double weight);

  bool contains(PropId id) const { return adj_.count(id) != 0; }
  std::size_t node_count() const { return adj_.size(); }
  std::size_t edge_count() const;
  std::vector<PropId> nodes() const;
  /// (min, max, weight), sorted by endpoints.
  std::vector<std::tuple<PropId, PropId, double>> edges() const;
  std::optional<double> weight(PropId a, PropId b) const;
  const std::map<PropId, double>& neighbours(PropId id) const { return adj_.at(id); }
  bool connected() const;
  Adjacency adjacency() const;

 private:
  std::map<PropId, std::map<PropId, double>> adj_;
};

class LongTermGraph {
 public:
  /// Adds nodes (recording the capture cycle and section of new ones) and
  /// edges of the working graph; existing edge weights never change.
  void merge(const WeightedGraph& working, std::size_t cycle, const DocumentPropositions& doc);

  bool contains(PropId id) const { return graph_.contains(id); }
  std::size_t node_count() const { return graph_.node_count(); }
  std::size_t edge_count() const { return graph_.edge_count(); }
  const WeightedGraph& graph() const { return graph_; }
  std::size_t first_capture(PropId id) const { return capture_.at(id); }
  std::size_t section(PropId id) const { return section_.at(id); }

 private:
  WeightedGraph graph_;
  std::map<PropId, std::size_t> capture_;
  std::map<PropId, std::size_t> section_;
};

/// Links every incoming node to its best memory node when phi > 0. Returns
/// whether the working graph is connected afterwards.
bool attach_nodes(WeightedGraph& working, const std::vector<PropId>& incoming, const MemoryTree& memory,
                  const OverlapModel& overlap);

struct RecallPath {
  PropId p = 0;
  PropId t = 0;
  std::vector<PropId> path;  // f0 .. t, shortest in the unweighted graph
  double objective = 0.0;
};

/// For each incoming node, the best path f0 .. t of at most `limit` nodes
/// scored as phi(p, f0) + c(t, T) * (sum of path weights) * exp(-|f|).
/// Nodes without a qualifying path are absent from the result.
std::vector<RecallPath> recall_paths(const std::vector<PropId>& incoming, const MemoryTree& memory,
                                     const LongTermGraph& graph, const OverlapModel& overlap, std::size_t limit);

/// Connects each working-graph node to its top `k` long-term candidates,
/// ranked same-section first, then earliest capture, then phi. Returns the
/// added edges as (working node, candidate).
std::vector<std::pair<PropId, PropId>> enrich(WeightedGraph& working, const LongTermGraph& graph,
                                              std::size_t current_section, std::size_t k,
                                              const OverlapModel& overlap);

/// Kruskal on descending weight (ties by lower endpoints), rooted at the
/// node of highest closeness. Throws std::invalid_argument if disconnected.
MemoryTree maximum_spanning_tree(const WeightedGraph& working);

struct DecayIncrements {
  std::map<PropId, double> members;
  std::map<PropId, double> neighbours;
};

/// Members gain their importance; nodes adjacent to the tree in the
/// long-term graph gain gamma times the importance they would have as a leaf
/// under their shallowest adjacent member.
DecayIncrements update_scores_decay(const MemoryTree& tree, const LongTermGraph& graph, ScoreTable& table,
                                    double gamma, ScoringStrategy strategy);

SimulationResult simulate(const DocumentPropositions& doc, const OverlapModel& overlap,
                          const SimulationParams& params, const CycleObserver& observer = {});

}  // namespace kvd::graphkvd
