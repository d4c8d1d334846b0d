#include "kvd/graphkvd.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "kvd/treekvd.hpp"

namespace kvd::graphkvd {

// --- WeightedGraph ------------------------------------------------------------

bool WeightedGraph::add_edge(PropId a, PropId b, double weight) {
  if (a == b) throw std::invalid_argument("weighted graph: self-loop");
  if (!(weight > 0.0 && weight <= 1.0)) throw std::invalid_argument("weighted graph: weight outside (0, 1]");
  auto& na = adj_[a];
  if (na.count(b) != 0) return false;
  na[b] = weight;
  adj_[b][a] = weight;
  return true;
}

std::size_t WeightedGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& [_, nbrs] : adj_) total += nbrs.size();
  return total / 2;
}

std::vector<PropId> WeightedGraph::nodes() const {
  std::vector<PropId> out;
  out.reserve(adj_.size());
  for (const auto& [id, _] : adj_) out.push_back(id);
  return out;
}

std::vector<std::tuple<PropId, PropId, double>> WeightedGraph::edges() const {
  std::vector<std::tuple<PropId, PropId, double>> out;
  for (const auto& [u, nbrs] : adj_)
    for (const auto& [v, w] : nbrs)
      if (u < v) out.emplace_back(u, v, w);
  return out;
}

std::optional<double> WeightedGraph::weight(PropId a, PropId b) const {
  auto it = adj_.find(a);
  if (it == adj_.end()) return std::nullopt;
  auto jt = it->second.find(b);
  if (jt == it->second.end()) return std::nullopt;
  return jt->second;
}

bool WeightedGraph::connected() const {
  if (adj_.empty()) return true;
  std::set<PropId> seen{adj_.begin()->first};
  std::deque<PropId> queue{adj_.begin()->first};
  while (!queue.empty()) {
    const PropId u = queue.front();
    queue.pop_front();
    for (const auto& [v, _] : adj_.at(u))
      if (seen.insert(v).second) queue.push_back(v);
  }
  return seen.size() == adj_.size();
}

Adjacency WeightedGraph::adjacency() const {
  Adjacency out;
  for (const auto& [u, nbrs] : adj_) {
    auto& list = out[u];
    for (const auto& [v, _] : nbrs) list.push_back(v);
  }
  return out;
}

void LongTermGraph::merge(const WeightedGraph& working, std::size_t cycle, const DocumentPropositions& doc) {
  for (PropId id : working.nodes()) {
    if (graph_.contains(id)) continue;
    graph_.add_node(id);
    capture_[id] = cycle;
    section_[id] = doc.at(id).section_id;
  }
  for (const auto& [a, b, w] : working.edges()) graph_.add_edge(a, b, w);
}

// --- cycle steps --------------------------------------------------------------

bool attach_nodes(WeightedGraph& working, const std::vector<PropId>& incoming, const MemoryTree& memory,
                  const OverlapModel& overlap) {
  for (PropId p : incoming) {
    std::optional<std::pair<PropId, double>> best;
    for (PropId t : overlap.candidates(p)) {
      if (!memory.contains(t)) continue;
      const double w = overlap.phi(t, p);
      if (w <= 0.0) continue;
      if (!best || w > best->second || (w == best->second && t > best->first)) best = std::pair(t, w);
    }
    if (best) working.add_edge(p, best->first, best->second);
  }
  return working.connected();
}

std::vector<RecallPath> recall_paths(const std::vector<PropId>& incoming, const MemoryTree& memory,
                                     const LongTermGraph& graph, const OverlapModel& overlap, std::size_t limit) {
  struct Reach {
    std::size_t dist = 0;
    double sum = 0.0;
    PropId next = 0;  // neighbour one step closer to t
  };
  const auto& g = graph.graph();
  const auto weight_of = importance(memory, ScoringStrategy::Tree);

  std::map<PropId, std::unordered_map<PropId, Reach>> reach;
  for (PropId t : memory.nodes()) {
    if (!g.contains(t)) continue;
    auto& r = reach[t];
    r[t] = {0, 0.0, t};
    std::deque<PropId> queue{t};
    while (!queue.empty()) {
      const PropId u = queue.front();
      queue.pop_front();
      const Reach here = r.at(u);
      if (here.dist + 2 > limit) continue;  // path would exceed `limit` nodes
      for (const auto& [v, w] : g.neighbours(u)) {
        const double cand = here.sum + w;
        auto it = r.find(v);
        if (it == r.end()) {
          r[v] = {here.dist + 1, cand, u};
          queue.push_back(v);
        } else if (it->second.dist == here.dist + 1 &&
                   (cand > it->second.sum || (cand == it->second.sum && u > it->second.next))) {
          it->second.sum = cand;
          it->second.next = u;
        }
      }
    }
  }

  std::vector<RecallPath> out;
  for (PropId p : incoming) {
    std::optional<RecallPath> best;
    PropId best_f0 = 0;
    for (PropId f0 : overlap.candidates(p)) {
      if (!g.contains(f0) || memory.contains(f0)) continue;
      const double head = overlap.phi(p, f0);
      if (head <= 0.0) continue;
      for (const auto& [t, r] : reach) {
        auto it = r.find(f0);
        if (it == r.end()) continue;
        const double nodes = static_cast<double>(it->second.dist + 1);
        const double objective = head + weight_of.at(t) * it->second.sum * std::exp(-nodes);
        if (!best || objective > best->objective ||
            (objective == best->objective && std::pair(t, f0) > std::pair(best->t, best_f0))) {
          best = RecallPath{p, t, {}, objective};
          best_f0 = f0;
        }
      }
    }
    if (!best) continue;
    const auto& r = reach.at(best->t);
    for (PropId cur = best_f0;; cur = r.at(cur).next) {
      best->path.push_back(cur);
      if (cur == best->t) break;
    }
    out.push_back(std::move(*best));
  }
  return out;
}

std::vector<std::pair<PropId, PropId>> enrich(WeightedGraph& working, const LongTermGraph& graph,
                                              std::size_t current_section, std::size_t k,
                                              const OverlapModel& overlap) {
  struct Candidate {
    bool foreign;
    std::size_t capture;
    double phi;
    PropId id;
  };
  std::vector<std::pair<PropId, PropId>> added;
  const auto base = working.nodes();
  for (PropId p : base) {
    std::vector<Candidate> cands;
    for (PropId c : overlap.candidates(p)) {
      if (!graph.contains(c) || std::binary_search(base.begin(), base.end(), c)) continue;
      const double w = overlap.phi(p, c);
      if (w <= 0.0) continue;
      cands.push_back({graph.section(c) != current_section, graph.first_capture(c), w, c});
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
      if (a.foreign != b.foreign) return !a.foreign;
      if (a.capture != b.capture) return a.capture < b.capture;
      if (a.phi != b.phi) return a.phi > b.phi;
      return a.id > b.id;
    });
    for (std::size_t i = 0; i < cands.size() && i < k; ++i) {
      working.add_node(cands[i].id);
      if (working.add_edge(p, cands[i].id, cands[i].phi)) added.emplace_back(p, cands[i].id);
    }
  }
  return added;
}

MemoryTree maximum_spanning_tree(const WeightedGraph& working) {
  const auto nodes = working.nodes();
  if (nodes.empty()) return {};
  std::unordered_map<PropId, std::size_t> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = i;
  std::vector<std::size_t> parent(nodes.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  auto edges = working.edges();
  std::stable_sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    if (std::get<2>(a) != std::get<2>(b)) return std::get<2>(a) > std::get<2>(b);
    return std::pair(std::get<0>(a), std::get<1>(a)) < std::pair(std::get<0>(b), std::get<1>(b));
  });
  std::vector<std::pair<PropId, PropId>> chosen;
  for (const auto& [a, b, w] : edges) {
    const auto ra = find(index[a]);
    const auto rb = find(index[b]);
    if (ra == rb) continue;
    parent[ra] = rb;
    chosen.emplace_back(a, b);
    if (chosen.size() + 1 == nodes.size()) break;
  }
  if (chosen.size() + 1 != nodes.size())
    throw std::invalid_argument("maximum_spanning_tree: working graph is disconnected");
  return adjust_root(MemoryTree(nodes, chosen, nodes.front()));
}

DecayIncrements update_scores_decay(const MemoryTree& tree, const LongTermGraph& graph, ScoreTable& table,
                                    double gamma, ScoringStrategy strategy) {
  DecayIncrements out;
  if (tree.empty()) return out;
  out.members = importance(tree, strategy);
  const auto depth = tree.depths();

  std::map<PropId, PropId> anchor;  // neighbour -> shallowest adjacent member
  for (PropId m : tree.nodes()) {
    if (!graph.contains(m)) continue;
    for (const auto& [v, _] : graph.graph().neighbours(m)) {
      if (tree.contains(v)) continue;
      auto it = anchor.find(v);
      if (it == anchor.end() || depth.at(m) < depth.at(it->second) ||
          (depth.at(m) == depth.at(it->second) && m > it->second))
        anchor[v] = m;
    }
  }

  const double size = static_cast<double>(tree.size());
  for (const auto& [v, m] : anchor) {
    double c = 0.0;
    switch (strategy) {
      case ScoringStrategy::Tree:
        c = (1.0 / size) * std::exp(1.0 / static_cast<double>(depth.at(m) + 1));
        break;
      case ScoringStrategy::Freq:
        c = 1.0;
        break;
      case ScoringStrategy::Eigen:
        c = out.members.at(m);
        break;
    }
    out.neighbours[v] = gamma * c;
  }

  for (const auto& [id, v] : out.members) table.add(id, v);
  for (const auto& [id, v] : out.neighbours) table.add(id, v);
  return out;
}

// --- simulation ---------------------------------------------------------------

SimulationResult simulate(const DocumentPropositions& doc, const OverlapModel& overlap,
                          const SimulationParams& params, const CycleObserver& observer) {
  params.validate();
  SimulationResult result{ScoreTable(doc.size()), {}};
  MemoryTree memory;
  LongTermGraph graph;
  std::size_t psi = 0;

  for (std::size_t k = 0; k < doc.trees.size(); ++k) {
    const auto& ptree = doc.trees[k];
    if (ptree.nodes.empty()) continue;
    const MemoryTree incoming = MemoryTree::from_proposition_tree(ptree);
    const auto incoming_nodes = incoming.nodes();
    const std::size_t section = doc.at(ptree.root).section_id;

    CycleRecord rec;
    rec.cycle = k;
    rec.sentence_id = doc.at(ptree.root).sentence_id;
    rec.incoming = incoming_nodes;

    auto incoming_graph = [&] {
      WeightedGraph w;
      for (PropId n : incoming_nodes) w.add_node(n);
      for (const auto& [a, b] : incoming.edges())
        w.add_edge(a, b, std::max(overlap.phi(a, b), kStructuralEdgeFloor));
      return w;
    };

    WeightedGraph working = incoming_graph();
    bool attached = false;
    if (memory.empty()) {
      rec.mode = AttachMode::Init;
      attached = true;
    } else {
      for (PropId n : memory.nodes()) working.add_node(n);
      for (const auto& [a, b] : memory.edges()) working.add_edge(a, b, graph.graph().weight(a, b).value());
      rec.mode = AttachMode::Direct;
      attached = attach_nodes(working, incoming_nodes, memory, overlap);
      if (!attached) {
        std::set<PropId> recalled;
        for (const auto& r : recall_paths(incoming_nodes, memory, graph, overlap, params.recall_limit)) {
          working.add_edge(r.p, r.path.front(), overlap.phi(r.p, r.path.front()));
          for (std::size_t i = 1; i < r.path.size(); ++i)
            working.add_edge(r.path[i - 1], r.path[i], graph.graph().weight(r.path[i - 1], r.path[i]).value());
          for (PropId f : r.path)
            if (!memory.contains(f)) recalled.insert(f);
        }
        rec.mode = AttachMode::Recall;
        rec.recalled.assign(recalled.begin(), recalled.end());
        attached = working.connected();
      }
      if (!attached) {
        const bool replace = treekvd::should_replace(incoming, memory);
        if (replace || psi + 1 >= params.persistence) {
          rec.mode = replace ? AttachMode::Replace : AttachMode::Reset;
          rec.recalled.clear();
          working = incoming_graph();
          std::set<PropId> enriched;
          for (const auto& [p, c] : enrich(working, graph, section, params.enrich_k, overlap)) enriched.insert(c);
          rec.enriched.assign(enriched.begin(), enriched.end());
          attached = true;
        } else {
          ++psi;
          rec.mode = AttachMode::Persist;
        }
      }
    }

    if (attached) {
      graph.merge(working, k, doc);
      auto selection = memory_select(params.wm, maximum_spanning_tree(working));
      for (const auto& fragment : selection.pruned)
        for (PropId id : fragment.nodes()) rec.pruned.push_back(id);
      std::sort(rec.pruned.begin(), rec.pruned.end());
      memory = std::move(selection.kept);
      auto inc = update_scores_decay(memory, graph, result.scores, params.gamma, params.scoring);
      rec.member_increments = std::move(inc.members);
      rec.neighbour_increments = std::move(inc.neighbours);
      rec.scored = true;
      psi = 0;
    }
    result.scores.next_cycle();

    rec.persistence = psi;
    rec.kept = memory.nodes();
    if (!memory.empty()) rec.root = memory.root();
    rec.kept_edges = memory.directed_edges();
    if (observer) {
      const auto long_term = graph.graph().nodes();
      const auto adjacency = graph.graph().adjacency();
      observer(CycleView{rec, memory, result.scores, long_term, &adjacency});
    }
    result.trace.push_back(std::move(rec));
  }
  return result;
}

}  // namespace kvd::graphkvd
