#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dualkosz/graph.hpp"
#include "dualkosz/rng.hpp"
#include "dualkosz/spanning_tree.hpp"

namespace dualkosz {

enum class Backend { Naive, Table };

std::string_view to_string(Backend backend);
std::optional<Backend> parse_backend(std::string_view name);

/// H(C, C'): increase in the flow out of C' when every value in C rises by 1.
/// Cuts are named by their child vertex. The table is n x n and stored
/// row-major by the raised cut, so one addvalue reads one row; the root's row
/// and column are zero (raising everything moves no flow, and nothing leaves V).
class InfluenceTable {
 public:
  InfluenceTable() = default;
  explicit InfluenceTable(std::size_t n) : n_(n), entries_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(VertexId raised, VertexId measured) const { return entries_[raised * n_ + measured]; }
  double& operator()(VertexId raised, VertexId measured) { return entries_[raised * n_ + measured]; }
  std::span<const double> row(VertexId raised) const { return {entries_.data() + raised * n_, n_}; }

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

/// Fills each row leaves-up:
///   H(C, C') = Σ_{w: vw∈E} (1[v∈C] - 1[w∈C]) / r(v,w) + Σ_{child subtrees C''} H(C, C'')
/// where v is the top vertex of C'. O(m) per row.
InfluenceTable build_h_table(const WeightedGraph& graph, const RootedTree& tree);

/// Per-vertex values with two operations: raise a whole subtree, and report
/// S(C) - f(C) for a subtree cut. The graph, tree and supply must outlive the
/// state. Copies are independent; the influence table is immutable and shared.
class TreeFlowState {
 public:
  TreeFlowState(const WeightedGraph& graph, const RootedTree& tree, const SupplyVector& b, Backend backend);

  /// Adds x to value(u) for every u in the subtree of v. At the root this is a
  /// uniform shift and changes no findflow answer.
  void addvalue(VertexId v, double x);

  /// S(C) - f(C) for C = subtree(v). Throws RootCutQuery at the root.
  double findflow(VertexId v) const;

  /// f(C), the flow out of subtree(v) induced by the current values.
  double flow_out(VertexId v) const;

  std::span<const double> values() const noexcept { return values_; }
  Backend backend() const noexcept { return backend_; }
  const WeightedGraph& graph() const noexcept { return *graph_; }
  const RootedTree& tree() const noexcept { return *tree_; }
  const CutQuantities& cuts() const noexcept { return cuts_; }

 private:
  double scan_flow_out(VertexId v) const;

  const WeightedGraph* graph_;
  const RootedTree* tree_;
  Backend backend_;
  CutQuantities cuts_;
  std::vector<double> values_;
  // Naive backend: values without root shifts, so those stay exact no-ops.
  std::vector<double> relative_;
  std::shared_ptr<const InfluenceTable> table_;
  std::vector<double> cut_flow_;
};

/// findflow answers scaled by a random factor in [1/alpha, alpha], drawn
/// log-uniformly from a seeded stream. addvalue is exact.
class ApproxTreeFlow {
 public:
  ApproxTreeFlow(TreeFlowState inner, double alpha, std::uint64_t seed);

  void addvalue(VertexId v, double x) { inner_.addvalue(v, x); }
  double findflow(VertexId v);
  double exact_findflow(VertexId v) const { return inner_.findflow(v); }

  double alpha() const noexcept { return alpha_; }
  const TreeFlowState& inner() const noexcept { return inner_; }

 private:
  TreeFlowState inner_;
  double alpha_;
  Rng noise_;
};

}  // namespace dualkosz
