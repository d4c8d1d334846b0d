#include "kvd/treekvd.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace kvd::treekvd {

void LongTermForest::add(const MemoryTree& fragment) {
  for (const auto& [id, nbrs] : fragment.adjacency()) {
    auto& mine = adj_[id];
    mine.insert(mine.end(), nbrs.begin(), nbrs.end());
    std::sort(mine.begin(), mine.end());
    mine.erase(std::unique(mine.begin(), mine.end()), mine.end());
  }
}

void LongTermForest::remove(PropId id) {
  auto it = adj_.find(id);
  if (it == adj_.end()) return;
  for (PropId v : it->second) std::erase(adj_.at(v), id);
  adj_.erase(it);
}

std::vector<PropId> LongTermForest::nodes() const {
  std::vector<PropId> out;
  out.reserve(adj_.size());
  for (const auto& [id, _] : adj_) out.push_back(id);
  return out;
}

namespace {

struct Link {
  double phi = 0.0;
  PropId other = 0;
};

// Strongest link from each forest node into `side`, ties to the highest id.
std::unordered_map<PropId, Link> best_links(const MemoryTree& side, const LongTermForest& forest,
                                            const OverlapModel& overlap) {
  std::unordered_map<PropId, Link> best;
  for (PropId s : side.nodes()) {
    for (PropId f : overlap.candidates(s)) {
      if (!forest.contains(f)) continue;
      const double w = overlap.phi(s, f);
      if (w <= 0.0) continue;
      auto& b = best[f];
      if (w > b.phi || (w == b.phi && s > b.other)) b = {w, s};
    }
  }
  return best;
}

}  // namespace

std::optional<DirectAttachment> attach_direct(const MemoryTree& incoming, const MemoryTree& memory,
                                              const OverlapModel& overlap) {
  std::optional<DirectAttachment> best;
  for (PropId p : incoming.nodes()) {
    for (PropId t : overlap.candidates(p)) {
      if (!memory.contains(t)) continue;
      const double w = overlap.phi(t, p);
      if (w <= 0.0) continue;
      if (!best || w > best->phi || (w == best->phi && std::pair(t, p) > std::pair(best->t, best->p)))
        best = DirectAttachment{t, p, w};
    }
  }
  return best;
}

std::optional<RecallAttachment> recall_attach(const MemoryTree& incoming, const MemoryTree& memory,
                                              const LongTermForest& forest, const OverlapModel& overlap,
                                              std::size_t limit, double early_stop) {
  if (forest.size() == 0 || limit == 0) return std::nullopt;
  const auto to_memory = best_links(memory, forest, overlap);
  if (to_memory.empty()) return std::nullopt;
  const auto to_incoming = best_links(incoming, forest, overlap);
  if (to_incoming.empty()) return std::nullopt;

  // Hops from each forest node to the nearest node that links to P; used to
  // cut branches that cannot reach a valid end within the length limit.
  std::unordered_map<PropId, std::size_t> hops;
  std::deque<PropId> queue;
  for (const auto& [f, _] : to_incoming) {
    hops[f] = 0;
    queue.push_back(f);
  }
  while (!queue.empty()) {
    const PropId u = queue.front();
    queue.pop_front();
    if (hops[u] + 1 >= limit) continue;
    for (PropId v : forest.neighbours(u)) {
      if (hops.count(v) != 0) continue;
      hops[v] = hops[u] + 1;
      queue.push_back(v);
    }
  }

  std::vector<std::pair<PropId, Link>> starts;
  for (const auto& [f, link] : to_memory)
    if (hops.count(f) != 0) starts.emplace_back(f, link);
  std::sort(starts.begin(), starts.end(), [](const auto& a, const auto& b) {
    if (a.second.phi != b.second.phi) return a.second.phi > b.second.phi;
    return a.first > b.first;
  });

  std::optional<RecallAttachment> best;
  bool done = false;
  std::vector<PropId> path;

  auto dfs = [&](auto&& self, double head, double internal) -> void {
    const PropId last = path.back();
    if (auto end = to_incoming.find(last); end != to_incoming.end()) {
      const double total = head + internal + end->second.phi;
      if (!best || total > best->total) {
        best = RecallAttachment{to_memory.at(path.front()).other, path, end->second.other, total};
        if (total > early_stop) {
          done = true;
          return;
        }
      }
    }
    if (path.size() >= limit) return;
    const std::size_t remaining = limit - path.size() - 1;
    std::vector<std::pair<double, PropId>> next;
    for (PropId v : forest.neighbours(last)) {
      if (std::find(path.begin(), path.end(), v) != path.end()) continue;
      auto h = hops.find(v);
      if (h == hops.end() || h->second > remaining) continue;
      next.emplace_back(overlap.phi(last, v), v);
    }
    std::sort(next.begin(), next.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second > b.second;
    });
    for (const auto& [w, v] : next) {
      path.push_back(v);
      self(self, head, internal + w);
      path.pop_back();
      if (done) return;
    }
  };

  for (const auto& [f, link] : starts) {
    path.assign(1, f);
    dfs(dfs, link.phi, 0.0);
    if (done) break;
  }
  if (best && best->total > 0.0) return best;
  return std::nullopt;
}

bool should_replace(const MemoryTree& incoming, const MemoryTree& memory) {
  if (incoming.size() <= memory.size()) return false;
  return closeness_greater(closeness_ratio(incoming.adjacency(), incoming.root()),
                           closeness_ratio(memory.adjacency(), memory.root()));
}

SimulationResult simulate(const DocumentPropositions& doc, const OverlapModel& overlap,
                          const SimulationParams& params, const CycleObserver& observer) {
  params.validate();
  SimulationResult result{ScoreTable(doc.size()), {}};
  MemoryTree memory;
  LongTermForest forest;
  std::size_t psi = 0;

  for (std::size_t k = 0; k < doc.trees.size(); ++k) {
    const auto& ptree = doc.trees[k];
    if (ptree.nodes.empty()) continue;
    const MemoryTree incoming = MemoryTree::from_proposition_tree(ptree);

    CycleRecord rec;
    rec.cycle = k;
    rec.sentence_id = doc.at(ptree.root).sentence_id;
    rec.incoming = incoming.nodes();

    std::optional<MemoryTree> attached;
    if (memory.empty()) {
      rec.mode = AttachMode::Init;
      attached = incoming;
    } else if (auto direct = attach_direct(incoming, memory, overlap)) {
      rec.mode = AttachMode::Direct;
      MemoryTree joined = memory;
      for (const auto& [a, b] : incoming.edges()) joined.add_edge(a, b);
      for (PropId n : incoming.nodes()) joined.add_node(n);
      joined.add_edge(direct->t, direct->p);
      attached = std::move(joined);
    } else if (auto recall =
                   recall_attach(incoming, memory, forest, overlap, params.recall_limit, params.early_stop)) {
      rec.mode = AttachMode::Recall;
      MemoryTree joined = memory;
      for (const auto& [a, b] : incoming.edges()) joined.add_edge(a, b);
      for (PropId n : incoming.nodes()) joined.add_node(n);
      joined.add_edge(recall->t, recall->path.front());
      for (std::size_t i = 1; i < recall->path.size(); ++i) joined.add_edge(recall->path[i - 1], recall->path[i]);
      joined.add_edge(recall->path.back(), recall->p);
      for (PropId f : recall->path) forest.remove(f);
      rec.recalled = recall->path;
      attached = std::move(joined);
    } else if (should_replace(incoming, memory)) {
      rec.mode = AttachMode::Replace;
      forest.add(memory);
      attached = incoming;
    } else {
      ++psi;
      rec.mode = AttachMode::Persist;
      if (psi >= params.persistence) {
        rec.mode = AttachMode::Reset;
        forest.add(memory);
        memory = MemoryTree();
        psi = 0;
      }
    }

    if (attached) {
      auto selection = memory_select(params.wm, adjust_root(std::move(*attached)));
      for (const auto& fragment : selection.pruned) {
        forest.add(fragment);
        for (PropId id : fragment.nodes()) rec.pruned.push_back(id);
      }
      std::sort(rec.pruned.begin(), rec.pruned.end());
      memory = std::move(selection.kept);
      rec.member_increments = update_scores(memory, result.scores, params.scoring);
      rec.scored = true;
      psi = 0;
    }
    result.scores.next_cycle();

    rec.persistence = psi;
    rec.kept = memory.nodes();
    if (!memory.empty()) rec.root = memory.root();
    rec.kept_edges = memory.directed_edges();
    if (observer) {
      const auto long_term = forest.nodes();
      observer(CycleView{rec, memory, result.scores, long_term, nullptr});
    }
    result.trace.push_back(std::move(rec));
  }
  return result;
}

}  // namespace kvd::treekvd
