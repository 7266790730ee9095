#include "dualkosz/spanning_tree.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "dualkosz/error.hpp"

namespace dualkosz {

std::string_view to_string(TreeStrategy strategy) {
  switch (strategy) {
    case TreeStrategy::MinResistanceMST: return "mst";
    case TreeStrategy::BFS: return "bfs";
    case TreeStrategy::ExhaustiveMinStretch: return "exhaustive";
  }
  return "unknown";
}

std::optional<TreeStrategy> parse_tree_strategy(std::string_view name) {
  if (name == "mst") return TreeStrategy::MinResistanceMST;
  if (name == "bfs") return TreeStrategy::BFS;
  if (name == "exhaustive") return TreeStrategy::ExhaustiveMinStretch;
  return std::nullopt;
}

RootedTree::RootedTree(const WeightedGraph& graph, std::span<const EdgeId> tree_edges, VertexId root)
    : root_(root) {
  const std::size_t n = graph.num_vertices();
  if (root >= n) throw Error(ErrorKind::VertexOutOfRange, "root " + std::to_string(root));
  if (tree_edges.size() + 1 != n) {
    throw Error(ErrorKind::NotASpanningTree,
                std::to_string(tree_edges.size()) + " edges cannot span " + std::to_string(n) + " vertices");
  }

  std::vector<std::vector<EdgeId>> adjacent(n);
  child_of_edge_.assign(graph.num_edges(), kNoVertex);
  std::vector<EdgeId> sorted(tree_edges.begin(), tree_edges.end());
  std::sort(sorted.begin(), sorted.end());
  for (EdgeId e : sorted) {
    if (e >= graph.num_edges()) throw Error(ErrorKind::NotATreeEdge, "edge id " + std::to_string(e));
    adjacent[graph.edge(e).tail].push_back(e);
    adjacent[graph.edge(e).head].push_back(e);
  }

  parent_.assign(n, kNoVertex);
  parent_edge_.assign(n, kNoEdge);
  children_.assign(n, {});
  depth_.assign(n, 0);
  dfs_in_.assign(n, 0);
  dfs_out_.assign(n, 0);
  preorder_.clear();
  preorder_.reserve(n);

  // Iterative DFS; each frame remembers how far through its edge list it got.
  std::vector<std::pair<VertexId, std::size_t>> stack;
  parent_[root] = root;
  dfs_in_[root] = 0;
  preorder_.push_back(root);
  stack.emplace_back(root, 0);
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next == adjacent[v].size()) {
      dfs_out_[v] = preorder_.size();
      stack.pop_back();
      continue;
    }
    const EdgeId e = adjacent[v][next++];
    const Edge& edge = graph.edge(e);
    const VertexId w = edge.tail == v ? edge.head : edge.tail;
    if (e == parent_edge_[v]) continue;
    if (parent_[w] != kNoVertex) {
      throw Error(ErrorKind::NotASpanningTree, "edge " + std::to_string(e) + " closes a cycle");
    }
    parent_[w] = v;
    parent_edge_[w] = e;
    child_of_edge_[e] = w;
    depth_[w] = depth_[v] + 1;
    children_[v].push_back(w);
    dfs_in_[w] = preorder_.size();
    preorder_.push_back(w);
    stack.emplace_back(w, 0);
  }
  if (preorder_.size() != n) throw Error(ErrorKind::NotASpanningTree, "tree edges do not reach every vertex");
}

VertexId RootedTree::child_of(EdgeId e) const {
  if (!is_tree_edge(e)) throw Error(ErrorKind::NotATreeEdge, "edge " + std::to_string(e));
  return child_of_edge_[e];
}

std::vector<EdgeId> RootedTree::edges() const {
  std::vector<EdgeId> out;
  out.reserve(num_vertices() > 0 ? num_vertices() - 1 : 0);
  for (EdgeId e = 0; e < child_of_edge_.size(); ++e) {
    if (child_of_edge_[e] != kNoVertex) out.push_back(e);
  }
  return out;
}

std::vector<VertexId> RootedTree::cut_vertices() const {
  std::vector<VertexId> out;
  out.reserve(num_vertices() > 0 ? num_vertices() - 1 : 0);
  for (VertexId v = 0; v < num_vertices(); ++v) {
    if (v != root_) out.push_back(v);
  }
  return out;
}

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
  std::vector<std::size_t> parent;
};

std::vector<EdgeId> kruskal_edges(const WeightedGraph& graph) {
  std::vector<EdgeId> order(graph.num_edges());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
    return graph.edge(a).resistance < graph.edge(b).resistance;
  });
  DisjointSets sets(graph.num_vertices());
  std::vector<EdgeId> chosen;
  for (EdgeId e : order) {
    if (sets.unite(graph.edge(e).tail, graph.edge(e).head)) chosen.push_back(e);
  }
  return chosen;
}

std::vector<EdgeId> bfs_edges(const WeightedGraph& graph, VertexId root) {
  const std::size_t n = graph.num_vertices();
  std::vector<char> seen(n, 0);
  std::vector<EdgeId> chosen;
  std::vector<VertexId> queue{root};
  seen[root] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId v = queue[head];
    std::vector<Incidence> inc(graph.incident(v).begin(), graph.incident(v).end());
    std::sort(inc.begin(), inc.end(), [](const Incidence& a, const Incidence& b) { return a.edge < b.edge; });
    for (const Incidence& i : inc) {
      if (!seen[i.other]) {
        seen[i.other] = 1;
        chosen.push_back(i.edge);
        queue.push_back(i.other);
      }
    }
  }
  return chosen;
}

// Stretch of a candidate tree on at most kExhaustiveMaxVertices vertices,
// using fixed-size scratch arrays so the enumeration does not allocate.
class SmallTreeStretch {
 public:
  explicit SmallTreeStretch(const WeightedGraph& graph) : graph_(graph) {}

  double operator()(std::span<const EdgeId> edges) {
    degree_.fill(0);
    for (EdgeId e : edges) {
      const Edge& edge = graph_.edge(e);
      adj_[edge.tail][degree_[edge.tail]++] = e;
      adj_[edge.head][degree_[edge.head]++] = e;
    }
    std::array<VertexId, kExhaustiveMaxVertices> queue{};
    std::array<char, kExhaustiveMaxVertices> seen{};
    std::size_t tail = 0;
    queue[tail++] = 0;
    seen[0] = 1;
    parent_[0] = 0;
    depth_[0] = 0;
    from_root_[0] = 0.0;
    for (std::size_t head = 0; head < tail; ++head) {
      const VertexId v = queue[head];
      for (std::size_t k = 0; k < degree_[v]; ++k) {
        const Edge& edge = graph_.edge(adj_[v][k]);
        const VertexId w = edge.tail == v ? edge.head : edge.tail;
        if (seen[w]) continue;
        seen[w] = 1;
        parent_[w] = v;
        depth_[w] = depth_[v] + 1;
        from_root_[w] = from_root_[v] + edge.resistance;
        queue[tail++] = w;
      }
    }
    double total = 0.0;
    for (const Edge& edge : graph_.edges()) {
      VertexId a = edge.tail;
      VertexId b = edge.head;
      while (depth_[a] > depth_[b]) a = parent_[a];
      while (depth_[b] > depth_[a]) b = parent_[b];
      while (a != b) {
        a = parent_[a];
        b = parent_[b];
      }
      total += (from_root_[edge.tail] + from_root_[edge.head] - 2.0 * from_root_[a]) / edge.resistance;
    }
    return total;
  }

 private:
  const WeightedGraph& graph_;
  std::array<std::array<EdgeId, kExhaustiveMaxVertices>, kExhaustiveMaxVertices> adj_{};
  std::array<std::size_t, kExhaustiveMaxVertices> degree_{};
  std::array<VertexId, kExhaustiveMaxVertices> parent_{};
  std::array<std::size_t, kExhaustiveMaxVertices> depth_{};
  std::array<double, kExhaustiveMaxVertices> from_root_{};
};

// Enumerates spanning trees with edges decided in increasing id order,
// inclusion first, so trees arrive in lexicographic order of their edge lists
// and the first minimum found is the lowest-id one.
class ExhaustiveSearch {
 public:
  explicit ExhaustiveSearch(const WeightedGraph& graph) : graph_(graph), evaluate_(graph) {}

  std::vector<EdgeId> run() {
    const std::size_t n = graph_.num_vertices();
    std::array<std::size_t, kExhaustiveMaxVertices> comp{};
    for (std::size_t v = 0; v < n; ++v) comp[v] = v;
    chosen_.clear();
    recurse(0, comp);
    return best_;
  }

 private:
  void recurse(EdgeId next, std::array<std::size_t, kExhaustiveMaxVertices> comp) {
    const std::size_t n = graph_.num_vertices();
    if (chosen_.size() + 1 == n) {
      const double s = evaluate_(chosen_);
      if (best_.empty() || s < best_stretch_ * (1.0 - 1e-12)) {
        best_stretch_ = s;
        best_ = chosen_;
      }
      return;
    }
    if (graph_.num_edges() - next < n - 1 - chosen_.size()) return;
    const Edge& edge = graph_.edge(next);
    const std::size_t a = comp[edge.tail];
    const std::size_t b = comp[edge.head];
    if (a != b) {
      auto merged = comp;
      for (std::size_t v = 0; v < n; ++v) {
        if (merged[v] == b) merged[v] = a;
      }
      chosen_.push_back(next);
      recurse(next + 1, merged);
      chosen_.pop_back();
    }
    recurse(next + 1, comp);
  }

  const WeightedGraph& graph_;
  SmallTreeStretch evaluate_;
  std::vector<EdgeId> chosen_;
  std::vector<EdgeId> best_;
  double best_stretch_ = 0.0;
};

}  // namespace

RootedTree build_tree(const WeightedGraph& graph, TreeStrategy strategy, VertexId root) {
  if (root >= graph.num_vertices()) throw Error(ErrorKind::VertexOutOfRange, "root " + std::to_string(root));
  if (!graph.is_connected()) throw Error(ErrorKind::Disconnected, "cannot span a disconnected graph");
  switch (strategy) {
    case TreeStrategy::MinResistanceMST: return RootedTree(graph, kruskal_edges(graph), root);
    case TreeStrategy::BFS: return RootedTree(graph, bfs_edges(graph, root), root);
    case TreeStrategy::ExhaustiveMinStretch: {
      if (graph.num_vertices() > kExhaustiveMaxVertices) {
        throw Error(ErrorKind::TooLargeForExhaustive,
                    std::to_string(graph.num_vertices()) + " vertices (limit " +
                        std::to_string(kExhaustiveMaxVertices) + ")");
      }
      return RootedTree(graph, ExhaustiveSearch(graph).run(), root);
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown tree strategy");
}

std::vector<VertexId> fundamental_cut(const RootedTree& tree, EdgeId tree_edge) {
  const auto sub = tree.subtree(tree.child_of(tree_edge));
  std::vector<VertexId> out(sub.begin(), sub.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PathStep> oriented_tree_path(const WeightedGraph& graph, const RootedTree& tree, VertexId from,
                                         VertexId to) {
  std::vector<PathStep> up;
  std::vector<PathStep> down;
  VertexId a = from;
  VertexId b = to;
  auto step_up = [&](VertexId v) {
    const EdgeId e = tree.parent_edge(v);
    return PathStep{e, graph.edge(e).tail == v ? 1 : -1};
  };
  while (tree.depth(a) > tree.depth(b)) {
    up.push_back(step_up(a));
    a = tree.parent(a);
  }
  while (tree.depth(b) > tree.depth(a)) {
    down.push_back(step_up(b));
    b = tree.parent(b);
  }
  while (a != b) {
    up.push_back(step_up(a));
    a = tree.parent(a);
    down.push_back(step_up(b));
    b = tree.parent(b);
  }
  // The down half was collected walking toward the root; reverse it and flip
  // each crossing so it reads from the meeting point to `to`.
  for (auto it = down.rbegin(); it != down.rend(); ++it) up.push_back({it->edge, -it->direction});
  return up;
}

std::vector<EdgeId> tree_path(const WeightedGraph& graph, const RootedTree& tree, VertexId from, VertexId to) {
  std::vector<EdgeId> out;
  for (const PathStep& s : oriented_tree_path(graph, tree, from, to)) out.push_back(s.edge);
  return out;
}

std::vector<double> edge_stretches(const WeightedGraph& graph, const RootedTree& tree) {
  std::vector<double> out(graph.num_edges(), 0.0);
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    const Edge& edge = graph.edge(e);
    if (tree.is_tree_edge(e)) {
      out[e] = 1.0;
      continue;
    }
    double path = 0.0;
    for (const PathStep& s : oriented_tree_path(graph, tree, edge.tail, edge.head)) {
      path += graph.edge(s.edge).resistance;
    }
    out[e] = path / edge.resistance;
  }
  return out;
}

double stretch(const WeightedGraph& graph, const RootedTree& tree) {
  const std::vector<double> per_edge = edge_stretches(graph, tree);
  return std::accumulate(per_edge.begin(), per_edge.end(), 0.0);
}

CutQuantities cut_quantities(const WeightedGraph& graph, const RootedTree& tree, const SupplyVector& b) {
  const std::size_t n = graph.num_vertices();
  CutQuantities q;
  q.supply.assign(n, 0.0);
  q.conductance.assign(n, 0.0);
  q.resistance.assign(n, 0.0);

  const auto order = tree.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    q.supply[v] += b[v];
    if (v != tree.root()) q.supply[tree.parent(v)] += q.supply[v];
  }
  q.supply[tree.root()] = 0.0;

  // Edge (k,l) crosses C(v) exactly when the tree edge above v is on P(k,l).
  for (const Edge& edge : graph.edges()) {
    const double w = 1.0 / edge.resistance;
    VertexId a = edge.tail;
    VertexId c = edge.head;
    while (tree.depth(a) > tree.depth(c)) {
      q.conductance[a] += w;
      a = tree.parent(a);
    }
    while (tree.depth(c) > tree.depth(a)) {
      q.conductance[c] += w;
      c = tree.parent(c);
    }
    while (a != c) {
      q.conductance[a] += w;
      q.conductance[c] += w;
      a = tree.parent(a);
      c = tree.parent(c);
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    if (v != tree.root()) q.resistance[v] = 1.0 / q.conductance[v];
  }
  return q;
}

CutQuantities cut_quantities(const WeightedGraph& graph, const RootedTree& tree) {
  return cut_quantities(graph, tree, SupplyVector(graph.num_vertices()));
}

double tau(const WeightedGraph& graph, const RootedTree& tree, const CutQuantities& cuts) {
  double total = 0.0;
  for (VertexId v : tree.cut_vertices()) {
    total += graph.edge(tree.parent_edge(v)).resistance * cuts.conductance[v];
  }
  return total;
}

double tau(const WeightedGraph& graph, const RootedTree& tree) { return tau(graph, tree, cut_quantities(graph, tree)); }

SamplingDistribution::SamplingDistribution(const WeightedGraph& graph, const RootedTree& tree,
                                           const CutQuantities& cuts)
    : cuts_(tree.cut_vertices()) {
  probs_.reserve(cuts_.size());
  for (VertexId v : cuts_) probs_.push_back(graph.edge(tree.parent_edge(v)).resistance / cuts.resistance[v]);
  tau_ = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  double running = 0.0;
  cumulative_.reserve(probs_.size());
  for (double& p : probs_) {
    p /= tau_;
    running += p;
    cumulative_.push_back(running);
  }
  if (!cumulative_.empty()) cumulative_.back() = 1.0;
}

SamplingDistribution::SamplingDistribution(const WeightedGraph& graph, const RootedTree& tree)
    : SamplingDistribution(graph, tree, cut_quantities(graph, tree)) {}

VertexId SamplingDistribution::sample(Rng& rng) const {
  const double u = uniform01(rng);
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  return cuts_[static_cast<std::size_t>(it - cumulative_.begin())];
}

}  // namespace dualkosz
