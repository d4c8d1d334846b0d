#include "kvd/memory.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>

#include "kvd/kernels.hpp"

namespace kvd {

std::string_view to_string(ScoringStrategy s) {
  switch (s) {
    case ScoringStrategy::Tree: return "tree";
    case ScoringStrategy::Freq: return "freq";
    case ScoringStrategy::Eigen: return "eigen";
  }
  return "tree";
}

std::optional<ScoringStrategy> parse_scoring(std::string_view name) {
  if (name == "tree") return ScoringStrategy::Tree;
  if (name == "freq") return ScoringStrategy::Freq;
  if (name == "eigen") return ScoringStrategy::Eigen;
  return std::nullopt;
}

void SimulationParams::validate() const {
  if (wm < 1) throw std::invalid_argument("wm must be >= 1");
  if (recall_limit < 1) throw std::invalid_argument("recall_limit must be >= 1");
  if (persistence < 1) throw std::invalid_argument("persistence must be >= 1");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0, 1)");
  if (enrich_k < 1) throw std::invalid_argument("enrich_k must be >= 1");
  if (!(early_stop > 0.0 && early_stop <= 1.0)) throw std::invalid_argument("early_stop must lie in (0, 1]");
}

std::pair<std::size_t, std::size_t> closeness_ratio(const Adjacency& graph, PropId node) {
  std::map<PropId, std::size_t> dist{{node, 0}};
  std::deque<PropId> queue{node};
  std::size_t total = 0;
  while (!queue.empty()) {
    const PropId u = queue.front();
    queue.pop_front();
    const std::size_t d = dist[u];
    auto it = graph.find(u);
    if (it == graph.end()) continue;
    for (PropId v : it->second) {
      if (dist.count(v) != 0) continue;
      dist[v] = d + 1;
      total += d + 1;
      queue.push_back(v);
    }
  }
  return {dist.size() - 1, total};
}

double closeness_centrality(const Adjacency& graph, PropId node) {
  auto [reach, total] = closeness_ratio(graph, node);
  return total == 0 ? 0.0 : static_cast<double>(reach) / static_cast<double>(total);
}

bool closeness_greater(std::pair<std::size_t, std::size_t> a, std::pair<std::size_t, std::size_t> b) {
  // a.first / a.second > b.first / b.second, with x / 0 := 0.
  if (a.second == 0) return false;
  if (b.second == 0) return a.first > 0;
  return a.first * b.second > b.first * a.second;
}

// --- MemoryTree ---------------------------------------------------------------

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Breadth-first layout of a tree from its root, on dense indices into the
// ascending node list. Children are listed in ascending id order.
struct Layout {
  std::vector<PropId> ids;
  std::vector<std::size_t> order;  // BFS order of reachable nodes
  std::vector<std::size_t> parent;
  std::vector<std::size_t> depth;  // root = 1, 0 = unreachable
  std::vector<std::vector<std::size_t>> kids;
  std::vector<std::size_t> size;  // subtree sizes

  std::size_t index(PropId id) const {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  }
};

Layout layout(const MemoryTree& tree) {
  Layout l;
  const auto& adj = tree.adjacency();
  const std::size_t n = adj.size();
  l.ids.reserve(n);
  for (const auto& [id, _] : adj) l.ids.push_back(id);
  l.parent.assign(n, kNone);
  l.depth.assign(n, 0);
  l.kids.resize(n);
  l.size.assign(n, 0);
  if (n == 0) return l;
  const std::size_t root = l.index(tree.root());
  l.order.reserve(n);
  l.order.push_back(root);
  l.depth[root] = 1;
  for (std::size_t i = 0; i < l.order.size(); ++i) {
    const std::size_t u = l.order[i];
    for (PropId v : adj.at(l.ids[u])) {
      const std::size_t j = l.index(v);
      if (l.depth[j] != 0) continue;
      l.depth[j] = l.depth[u] + 1;
      l.parent[j] = u;
      l.kids[u].push_back(j);
      l.order.push_back(j);
    }
  }
  for (auto it = l.order.rbegin(); it != l.order.rend(); ++it) {
    l.size[*it] += 1;
    if (l.parent[*it] != kNone) l.size[l.parent[*it]] += l.size[*it];
  }
  return l;
}

}  // namespace

MemoryTree::MemoryTree(const std::vector<PropId>& nodes, const std::vector<std::pair<PropId, PropId>>& edges,
                       PropId root)
    : MemoryTree(Unchecked{}, nodes, edges, root) {
  if (!is_valid()) throw std::invalid_argument("memory tree: nodes and edges do not form a tree at the root");
}

MemoryTree::MemoryTree(Unchecked, const std::vector<PropId>& nodes,
                       const std::vector<std::pair<PropId, PropId>>& edges, PropId root) {
  for (PropId n : nodes) add_node(n);
  for (auto [a, b] : edges) add_edge(a, b);
  root_ = root;
}

MemoryTree MemoryTree::from_proposition_tree(const PropositionTree& tree) {
  return MemoryTree(tree.nodes, tree.edges, tree.root);
}

void MemoryTree::set_root(PropId root) {
  if (!contains(root)) throw std::invalid_argument("memory tree: root not in node set");
  root_ = root;
}

std::vector<PropId> MemoryTree::nodes() const {
  std::vector<PropId> out;
  out.reserve(adj_.size());
  for (const auto& [id, _] : adj_) out.push_back(id);
  return out;
}

std::vector<std::pair<PropId, PropId>> MemoryTree::edges() const {
  std::vector<std::pair<PropId, PropId>> out;
  for (const auto& [u, nbrs] : adj_)
    for (PropId v : nbrs)
      if (u < v) out.emplace_back(u, v);
  return out;
}

std::vector<std::pair<PropId, PropId>> MemoryTree::directed_edges() const {
  const auto l = layout(*this);
  std::vector<std::pair<PropId, PropId>> out;
  for (std::size_t i = 0; i < l.ids.size(); ++i)
    if (l.parent[i] != kNone) out.emplace_back(l.ids[l.parent[i]], l.ids[i]);
  std::sort(out.begin(), out.end());
  return out;
}

std::map<PropId, PropId> MemoryTree::parents() const {
  const auto l = layout(*this);
  std::map<PropId, PropId> parent;
  for (std::size_t i = 0; i < l.ids.size(); ++i)
    if (l.parent[i] != kNone) parent.emplace_hint(parent.end(), l.ids[i], l.ids[l.parent[i]]);
  return parent;
}

std::map<PropId, std::vector<PropId>> MemoryTree::children() const {
  const auto l = layout(*this);
  std::map<PropId, std::vector<PropId>> out;
  for (std::size_t i = 0; i < l.ids.size(); ++i) {
    auto& kids = out.emplace_hint(out.end(), l.ids[i], std::vector<PropId>{})->second;
    for (std::size_t k : l.kids[i]) kids.push_back(l.ids[k]);
  }
  return out;
}

std::map<PropId, std::size_t> MemoryTree::depths() const {
  const auto l = layout(*this);
  std::map<PropId, std::size_t> depth;
  for (std::size_t i = 0; i < l.ids.size(); ++i)
    if (l.depth[i] != 0) depth.emplace_hint(depth.end(), l.ids[i], l.depth[i]);
  return depth;
}

std::map<PropId, std::size_t> MemoryTree::subtree_sizes() const {
  const auto l = layout(*this);
  std::map<PropId, std::size_t> size;
  for (std::size_t i = 0; i < l.ids.size(); ++i)
    if (l.depth[i] != 0) size.emplace_hint(size.end(), l.ids[i], l.size[i]);
  return size;
}

bool MemoryTree::is_valid() const {
  if (empty()) return true;
  if (!contains(root_)) return false;
  std::size_t degree_sum = 0;
  for (const auto& [_, nbrs] : adj_) degree_sum += nbrs.size();
  if (degree_sum != 2 * (adj_.size() - 1)) return false;
  return layout(*this).order.size() == adj_.size();
}

void MemoryTree::add_node(PropId id) { adj_[id]; }

void MemoryTree::add_edge(PropId a, PropId b) {
  if (a == b) throw std::invalid_argument("memory tree: self-loop");
  auto insert = [](std::vector<PropId>& v, PropId x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) v.insert(it, x);
  };
  insert(adj_[a], b);
  insert(adj_[b], a);
}

// --- kvd-core operations -------------------------------------------------------

MemoryTree adjust_root(MemoryTree tree) {
  if (tree.empty()) return tree;
  // On a tree every node reaches all others, and the distance sums of all
  // nodes follow from one rooted pass: D(child) = D(parent) + n - 2 |subtree(child)|.
  const auto l = layout(tree);
  const std::size_t n = l.ids.size();
  std::vector<std::size_t> sums(n, 0);
  for (std::size_t i : l.order) sums[l.order.front()] += l.depth[i] - 1;
  for (std::size_t i : l.order)
    if (l.parent[i] != kNone) sums[i] = sums[l.parent[i]] + n - 2 * l.size[i];

  PropId best = tree.root();
  std::pair<std::size_t, std::size_t> best_ratio{0, 0};
  bool first = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (l.depth[i] == 0) continue;
    const std::pair<std::size_t, std::size_t> ratio{n - 1, sums[i]};
    if (first || !closeness_greater(best_ratio, ratio)) {
      best = l.ids[i];
      best_ratio = ratio;
      first = false;
    }
  }
  tree.set_root(best);
  return tree;
}

Selection memory_select(std::size_t wm, const MemoryTree& tree) {
  if (wm < 1) throw std::invalid_argument("memory_select: wm must be >= 1");
  Selection out;
  if (tree.size() <= wm) {
    out.kept = tree;
    return out;
  }

  const auto l = layout(tree);
  const std::size_t root = l.order.front();
  std::vector<bool> kept(l.ids.size(), false);
  std::size_t count = 1;
  kept[root] = true;

  // Descent along the largest subtree.
  for (std::size_t cur = root; count < wm;) {
    const auto& cs = l.kids[cur];
    if (cs.empty()) break;
    std::size_t next = cs.front();
    for (std::size_t c : cs)
      if (l.size[c] >= l.size[next]) next = c;
    if (!kept[next]) ++count;
    kept[next] = true;
    cur = next;
  }

  // Breadth-first fill, most recent children first.
  std::deque<std::size_t> queue{root};
  while (!queue.empty() && count < wm) {
    const std::size_t u = queue.front();
    queue.pop_front();
    const auto& cs = l.kids[u];
    for (auto it = cs.rbegin(); it != cs.rend() && count < wm; ++it) {
      if (!kept[*it]) ++count;
      kept[*it] = true;
      queue.push_back(*it);
    }
  }

  std::vector<PropId> kept_nodes;
  std::vector<std::pair<PropId, PropId>> kept_edges;
  for (std::size_t i = 0; i < l.ids.size(); ++i) {
    if (!kept[i]) continue;
    kept_nodes.push_back(l.ids[i]);
    if (l.parent[i] != kNone) kept_edges.emplace_back(l.ids[l.parent[i]], l.ids[i]);
  }
  out.kept = MemoryTree(MemoryTree::Unchecked{}, kept_nodes, kept_edges, tree.root());

  for (std::size_t i = 0; i < l.ids.size(); ++i) {
    if (kept[i] || !kept[l.parent[i]]) continue;
    std::vector<std::size_t> frag{i};
    std::vector<PropId> nodes{l.ids[i]};
    std::vector<std::pair<PropId, PropId>> edges;
    for (std::size_t k = 0; k < frag.size(); ++k)
      for (std::size_t c : l.kids[frag[k]]) {
        frag.push_back(c);
        nodes.push_back(l.ids[c]);
        edges.emplace_back(l.ids[frag[k]], l.ids[c]);
      }
    out.pruned.push_back(MemoryTree(MemoryTree::Unchecked{}, nodes, edges, l.ids[i]));
  }
  return out;
}

double node_importance(PropId t, const MemoryTree& tree) {
  const auto sizes = tree.subtree_sizes();
  const auto depth = tree.depths();
  return static_cast<double>(sizes.at(t)) / static_cast<double>(tree.size()) *
         std::exp(1.0 / static_cast<double>(depth.at(t)));
}

std::map<PropId, double> eigenvector_centrality(const MemoryTree& tree, double tolerance,
                                                std::size_t max_iterations) {
  std::map<PropId, double> out;
  const auto nodes = tree.nodes();
  const std::size_t n = nodes.size();
  if (n == 0) return out;
  if (n == 1) {
    out[nodes.front()] = 1.0;
    return out;
  }
  std::map<PropId, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[nodes[i]] = i;
  // A + I shifts the spectrum so bipartite graphs do not oscillate.
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    m[i * n + i] = 1.0;
    for (PropId v : tree.adjacency().at(nodes[i])) m[i * n + index.at(v)] = 1.0;
  }
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> y(n, 0.0);
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    kernels::matvec(m, n, n, x, y);
    const double norm = std::sqrt(kernels::dot(y, y));
    kernels::scale(1.0 / norm, y);
    const double diff = kernels::l1_distance(x, y);
    std::swap(x, y);
    if (diff < tolerance) break;
  }
  for (std::size_t i = 0; i < n; ++i) out[nodes[i]] = x[i];
  return out;
}

std::map<PropId, double> importance(const MemoryTree& tree, ScoringStrategy strategy) {
  std::map<PropId, double> out;
  if (tree.empty()) return out;
  switch (strategy) {
    case ScoringStrategy::Freq:
      for (PropId id : tree.nodes()) out[id] = 1.0;
      break;
    case ScoringStrategy::Eigen:
      out = eigenvector_centrality(tree);
      break;
    case ScoringStrategy::Tree: {
      const auto l = layout(tree);
      const double total = static_cast<double>(tree.size());
      for (std::size_t i = 0; i < l.ids.size(); ++i)
        out.emplace_hint(out.end(), l.ids[i],
                         static_cast<double>(l.size[i]) / total * std::exp(1.0 / static_cast<double>(l.depth[i])));
      break;
    }
  }
  return out;
}

void ScoreTable::add(PropId id, double amount) {
  if (amount < 0.0) throw std::invalid_argument("score increments must be non-negative");
  scores_.at(id) += amount;
}

double ScoreTable::total() const {
  double t = 0.0;
  for (double s : scores_) t += s;
  return t;
}

std::map<PropId, double> update_scores(const MemoryTree& tree, ScoreTable& table, ScoringStrategy strategy) {
  auto inc = importance(tree, strategy);
  for (const auto& [id, v] : inc) table.add(id, v);
  return inc;
}

}  // namespace kvd
