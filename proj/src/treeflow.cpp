#include "dualkosz/treeflow.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dualkosz/error.hpp"

namespace dualkosz {

std::string_view to_string(Backend backend) {
  switch (backend) {
    case Backend::Naive: return "naive";
    case Backend::Table: return "table";
  }
  return "unknown";
}

std::optional<Backend> parse_backend(std::string_view name) {
  if (name == "naive") return Backend::Naive;
  if (name == "table") return Backend::Table;
  return std::nullopt;
}

InfluenceTable build_h_table(const WeightedGraph& graph, const RootedTree& tree) {
  const std::size_t n = graph.num_vertices();
  InfluenceTable table(n);
  const auto order = tree.preorder();
  std::vector<double> local(n);
  for (VertexId raised : tree.cut_vertices()) {
    for (VertexId v = 0; v < n; ++v) {
      const double inside_v = tree.in_subtree(v, raised) ? 1.0 : 0.0;
      double acc = 0.0;
      for (const Incidence& inc : graph.incident(v)) {
        const double inside_w = tree.in_subtree(inc.other, raised) ? 1.0 : 0.0;
        acc += (inside_v - inside_w) / graph.edge(inc.edge).resistance;
      }
      local[v] = acc;
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const VertexId v = *it;
      if (v == tree.root()) continue;
      double h = local[v];
      for (VertexId child : tree.children(v)) h += table(raised, child);
      table(raised, v) = h;
    }
  }
  return table;
}

TreeFlowState::TreeFlowState(const WeightedGraph& graph, const RootedTree& tree, const SupplyVector& b,
                             Backend backend)
    : graph_(&graph),
      tree_(&tree),
      backend_(backend),
      cuts_(cut_quantities(graph, tree, b)),
      values_(graph.num_vertices(), 0.0) {
  if (tree.num_vertices() != graph.num_vertices() || b.size() != graph.num_vertices()) {
    throw Error(ErrorKind::DimensionMismatch, "tree, supply and graph disagree on the vertex count");
  }
  if (backend_ == Backend::Table) {
    table_ = std::make_shared<const InfluenceTable>(build_h_table(graph, tree));
    cut_flow_.assign(graph.num_vertices(), 0.0);
  } else {
    relative_.assign(graph.num_vertices(), 0.0);
  }
}

void TreeFlowState::addvalue(VertexId v, double x) {
  for (VertexId u : tree_->subtree(v)) values_[u] += x;
  if (v == tree_->root()) return;
  if (backend_ == Backend::Table) {
    const auto h = table_->row(v);
    for (std::size_t c = 0; c < cut_flow_.size(); ++c) cut_flow_[c] += x * h[c];
  } else {
    for (VertexId u : tree_->subtree(v)) relative_[u] += x;
  }
}

double TreeFlowState::scan_flow_out(VertexId v) const {
  double out = 0.0;
  for (VertexId u : tree_->subtree(v)) {
    for (const Incidence& inc : graph_->incident(u)) {
      if (tree_->in_subtree(inc.other, v)) continue;
      out += (relative_[u] - relative_[inc.other]) / graph_->edge(inc.edge).resistance;
    }
  }
  return out;
}

double TreeFlowState::flow_out(VertexId v) const {
  if (v == tree_->root()) throw Error(ErrorKind::RootCutQuery, "the root's subtree is the whole vertex set");
  return backend_ == Backend::Table ? cut_flow_[v] : scan_flow_out(v);
}

double TreeFlowState::findflow(VertexId v) const { return cuts_.supply[v] - flow_out(v); }

ApproxTreeFlow::ApproxTreeFlow(TreeFlowState inner, double alpha, std::uint64_t seed)
    : inner_(std::move(inner)), alpha_(alpha), noise_(make_stream(seed, stream::kNoise)) {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
    throw Error(ErrorKind::InvalidArgument, "alpha must be a finite value >= 1");
  }
}

double ApproxTreeFlow::findflow(VertexId v) {
  const double exact = inner_.findflow(v);
  const double log_alpha = std::log(alpha_);
  double factor = std::exp(uniform(noise_, -log_alpha, log_alpha));
  factor = std::clamp(factor, 1.0 / alpha_, alpha_);
  return exact * factor;
}

}  // namespace dualkosz
