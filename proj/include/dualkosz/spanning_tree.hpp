#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dualkosz/graph.hpp"
#include "dualkosz/rng.hpp"

namespace dualkosz {

enum class TreeStrategy { MinResistanceMST, BFS, ExhaustiveMinStretch };

std::string_view to_string(TreeStrategy strategy);
std::optional<TreeStrategy> parse_tree_strategy(std::string_view name);

inline constexpr std::size_t kExhaustiveMaxVertices = 9;

/// A spanning tree with every edge directed toward the root. Each tree edge is
/// identified with its child endpoint, and the fundamental cut of that edge is
/// the vertex set of the child's subtree.
///
/// Subtrees are contiguous in preorder: u lies in the subtree of v iff
/// dfs_in(v) <= dfs_in(u) < dfs_out(v).
class RootedTree {
 public:
  /// Builds the rooted structure from exactly n-1 graph edges that span the
  /// graph. Children are visited in increasing edge-id order.
  RootedTree(const WeightedGraph& graph, std::span<const EdgeId> tree_edges, VertexId root);

  std::size_t num_vertices() const noexcept { return parent_.size(); }
  VertexId root() const noexcept { return root_; }
  VertexId parent(VertexId v) const { return parent_[v]; }
  EdgeId parent_edge(VertexId v) const { return parent_edge_[v]; }
  std::span<const VertexId> children(VertexId v) const { return children_[v]; }
  std::size_t depth(VertexId v) const { return depth_[v]; }
  std::size_t dfs_in(VertexId v) const { return dfs_in_[v]; }
  std::size_t dfs_out(VertexId v) const { return dfs_out_[v]; }

  /// Vertices in preorder; reversing it processes every child before its parent.
  std::span<const VertexId> preorder() const noexcept { return preorder_; }
  /// The subtree of v as a contiguous slice of preorder.
  std::span<const VertexId> subtree(VertexId v) const {
    return std::span<const VertexId>(preorder_).subspan(dfs_in_[v], dfs_out_[v] - dfs_in_[v]);
  }

  bool in_subtree(VertexId u, VertexId v) const {
    return dfs_in_[v] <= dfs_in_[u] && dfs_in_[u] < dfs_out_[v];
  }

  bool is_tree_edge(EdgeId e) const { return e < child_of_edge_.size() && child_of_edge_[e] != kNoVertex; }
  /// Child endpoint of a tree edge. Throws NotATreeEdge otherwise.
  VertexId child_of(EdgeId e) const;

  /// Tree edges in increasing id order.
  std::vector<EdgeId> edges() const;
  /// Non-root vertices in increasing id order: one per fundamental cut.
  std::vector<VertexId> cut_vertices() const;

  static constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

 private:
  VertexId root_;
  std::vector<VertexId> parent_;
  std::vector<EdgeId> parent_edge_;
  std::vector<std::vector<VertexId>> children_;
  std::vector<std::size_t> depth_;
  std::vector<std::size_t> dfs_in_;
  std::vector<std::size_t> dfs_out_;
  std::vector<VertexId> preorder_;
  std::vector<VertexId> child_of_edge_;
};

/// Ties in every strategy go to the lowest edge id.
RootedTree build_tree(const WeightedGraph& graph, TreeStrategy strategy, VertexId root = 0);

/// Vertex set of the subtree below a tree edge, sorted ascending.
std::vector<VertexId> fundamental_cut(const RootedTree& tree, EdgeId tree_edge);

struct PathStep {
  EdgeId edge;
  /// +1 when the walk crosses the edge tail -> head, -1 otherwise.
  int direction;
};

/// The unique tree path from k to l, in walking order. Empty iff k == l.
std::vector<PathStep> oriented_tree_path(const WeightedGraph& graph, const RootedTree& tree, VertexId from,
                                         VertexId to);
std::vector<EdgeId> tree_path(const WeightedGraph& graph, const RootedTree& tree, VertexId from, VertexId to);

/// st_T(i,j) = (1/r(i,j)) Σ_{P(i,j)} r, per graph edge. Tree edges give exactly 1.
std::vector<double> edge_stretches(const WeightedGraph& graph, const RootedTree& tree);
/// st_T(G), summed over all graph edges.
double stretch(const WeightedGraph& graph, const RootedTree& tree);

/// Per-cut constants, indexed by the cut's child vertex. Entries at the root
/// are zero and carry no meaning.
struct CutQuantities {
  /// S(C) = Σ_{v∈C} b(v).
  std::vector<double> supply;
  /// Σ_{e∈δ(C)} 1/r(e).
  std::vector<double> conductance;
  /// R(C) = 1 / conductance.
  std::vector<double> resistance;
};

/// S by the leaves-up recurrence; δ(C) conductances by adding 1/r(k,l) to
/// every tree edge on P(k,l), for every graph edge (k,l).
CutQuantities cut_quantities(const WeightedGraph& graph, const RootedTree& tree, const SupplyVector& b);
/// Same, with all supplies zero.
CutQuantities cut_quantities(const WeightedGraph& graph, const RootedTree& tree);

/// τ = Σ_{(i,j)∈T} r(i,j) / R(C(i,j)).
double tau(const WeightedGraph& graph, const RootedTree& tree, const CutQuantities& cuts);
double tau(const WeightedGraph& graph, const RootedTree& tree);

/// P_ij = r(i,j) / (τ R(C(i,j))), sampled by inverse CDF.
class SamplingDistribution {
 public:
  SamplingDistribution(const WeightedGraph& graph, const RootedTree& tree, const CutQuantities& cuts);
  SamplingDistribution(const WeightedGraph& graph, const RootedTree& tree);

  std::span<const VertexId> cuts() const noexcept { return cuts_; }
  std::span<const double> probabilities() const noexcept { return probs_; }
  std::span<const double> cumulative() const noexcept { return cumulative_; }
  double tau() const noexcept { return tau_; }

  /// Returns the child vertex of the sampled tree edge.
  VertexId sample(Rng& rng) const;

 private:
  std::vector<VertexId> cuts_;
  std::vector<double> probs_;
  std::vector<double> cumulative_;
  double tau_ = 0.0;
};

}  // namespace dualkosz
