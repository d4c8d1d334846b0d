#pragma once
// Tree-structured memory simulation: working memory is a pruned proposition
// tree, long-term memory a forest of the subtrees pruned away from it.

#include <cstddef>
#include <optional>
#include <vector>

#include "kvd/memory.hpp"
#include "kvd/overlap.hpp"
#include "kvd/trace.hpp"

namespace kvd::treekvd {

class LongTermForest {
 public:
  /// Adds a fragment with its internal edges; fragments are never joined.
  void add(const MemoryTree& fragment);
  void remove(PropId id);

  bool contains(PropId id) const { return adj_.count(id) != 0; }
  std::size_t size() const { return adj_.size(); }
  std::vector<PropId> nodes() const;
  const std::vector<PropId>& neighbours(PropId id) const { return adj_.at(id); }
  const Adjacency& adjacency() const { return adj_; }

 private:
  Adjacency adj_;
};

struct DirectAttachment {
  PropId t = 0;
  PropId p = 0;
  double phi = 0.0;
};

/// argmax phi over T x P; none when every pair scores 0.
std::optional<DirectAttachment> attach_direct(const MemoryTree& incoming, const MemoryTree& memory,
                                              const OverlapModel& overlap);

struct RecallAttachment {
  PropId t = 0;
  std::vector<PropId> path;  // f0 .. f_last, f0 links to t, f_last to p
  PropId p = 0;
  double total = 0.0;
};

/// Best bridge t - f0 .. f_last - p through a simple path of at most
/// `limit` nodes inside one forest fragment. Both end links must overlap.
/// Starts are tried by descending phi to memory; the search stops as soon as
/// a path total exceeds `early_stop`.
std::optional<RecallAttachment> recall_attach(const MemoryTree& incoming, const MemoryTree& memory,
                                              const LongTermForest& forest, const OverlapModel& overlap,
                                              std::size_t limit, double early_stop);

/// |P| > |T| and closeness(root(P)) > closeness(root(T)).
bool should_replace(const MemoryTree& incoming, const MemoryTree& memory);

SimulationResult simulate(const DocumentPropositions& doc, const OverlapModel& overlap,
                          const SimulationParams& params, const CycleObserver& observer = {});

}  // namespace kvd::treekvd
