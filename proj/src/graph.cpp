#include "dualkosz/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dualkosz/error.hpp"

namespace dualkosz {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::NonpositiveResistance: return "NonpositiveResistance";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorKind::SupplyImbalance: return "SupplyImbalance";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::TooLargeForExhaustive: return "TooLargeForExhaustive";
    case ErrorKind::NotATreeEdge: return "NotATreeEdge";
    case ErrorKind::NotASpanningTree: return "NotASpanningTree";
    case ErrorKind::RootCutQuery: return "RootCutQuery";
    case ErrorKind::InfeasibleFlow: return "InfeasibleFlow";
    case ErrorKind::GraphIsTree: return "GraphIsTree";
    case ErrorKind::SizeGuard: return "SizeGuard";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

WeightedGraph::WeightedGraph(std::size_t num_vertices, std::vector<Edge> edges)
    : edges_(std::move(edges)), adjacency_(num_vertices) {
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    if (edge.tail >= num_vertices || edge.head >= num_vertices) {
      throw Error(ErrorKind::VertexOutOfRange, "edge " + std::to_string(e) + " names a vertex >= " +
                                                   std::to_string(num_vertices));
    }
    if (edge.tail == edge.head) {
      throw Error(ErrorKind::SelfLoop, "edge " + std::to_string(e) + " at vertex " + std::to_string(edge.tail));
    }
    if (!(edge.resistance > 0.0) || !std::isfinite(edge.resistance)) {
      throw Error(ErrorKind::NonpositiveResistance,
                  "edge " + std::to_string(e) + " has resistance " + std::to_string(edge.resistance));
    }
    adjacency_[edge.tail].push_back({e, edge.head, true});
    adjacency_[edge.head].push_back({e, edge.tail, false});
  }
}

double WeightedGraph::max_resistance() const noexcept {
  double best = 0.0;
  for (const Edge& e : edges_) best = std::max(best, e.resistance);
  return best;
}

bool WeightedGraph::is_connected() const {
  const std::size_t n = num_vertices();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (const Incidence& inc : adjacency_[v]) {
      if (!seen[inc.other]) {
        seen[inc.other] = 1;
        ++reached;
        stack.push_back(inc.other);
      }
    }
  }
  return reached == n;
}

double max_abs(std::span<const double> values) {
  double best = 0.0;
  for (double x : values) best = std::max(best, std::abs(x));
  return best;
}

SupplyVector validate_instance(const WeightedGraph& graph, const SupplyVector& b) {
  const std::size_t n = graph.num_vertices();
  if (b.size() != n) {
    throw Error(ErrorKind::DimensionMismatch,
                "supply has " + std::to_string(b.size()) + " entries for " + std::to_string(n) + " vertices");
  }
  if (n == 0 || !graph.is_connected()) {
    throw Error(ErrorKind::Disconnected, "graph with " + std::to_string(n) + " vertices is not connected");
  }
  for (double x : b) {
    if (!std::isfinite(x)) throw Error(ErrorKind::SupplyImbalance, "supply has a non-finite entry");
  }
  const double total = std::accumulate(b.begin(), b.end(), 0.0);
  if (std::abs(total) > 1e-9 * max_abs(b.view())) {
    throw Error(ErrorKind::SupplyImbalance, "supplies sum to " + std::to_string(total));
  }
  SupplyVector centered(b);
  const double mean = total / static_cast<double>(n);
  for (double& x : centered) x -= mean;
  return centered;
}

DenseMatrix laplacian_dense(const WeightedGraph& graph) {
  DenseMatrix lap(graph.num_vertices());
  for (const Edge& e : graph.edges()) {
    const double w = 1.0 / e.resistance;
    lap(e.tail, e.tail) += w;
    lap(e.head, e.head) += w;
    lap(e.tail, e.head) -= w;
    lap(e.head, e.tail) -= w;
  }
  return lap;
}

double quadratic_form(const WeightedGraph& graph, const PotentialVector& p) {
  double acc = 0.0;
  for (const Edge& e : graph.edges()) {
    const double d = p[e.tail] - p[e.head];
    acc += d * d / e.resistance;
  }
  return acc;
}

double energy(const WeightedGraph& graph, const FlowVector& f) {
  double acc = 0.0;
  for (EdgeId e = 0; e < graph.num_edges(); ++e) acc += graph.edge(e).resistance * f[e] * f[e];
  return acc;
}

double potential_bound(const WeightedGraph& graph, const SupplyVector& b, const PotentialVector& p) {
  double bp = 0.0;
  for (std::size_t v = 0; v < b.size(); ++v) bp += b[v] * p[v];
  return 2.0 * bp - quadratic_form(graph, p);
}

FlowVector induced_flow(const WeightedGraph& graph, const PotentialVector& p) {
  FlowVector f(graph.num_edges());
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    const Edge& edge = graph.edge(e);
    f[e] = (p[edge.tail] - p[edge.head]) / edge.resistance;
  }
  return f;
}

double lnorm_error(const WeightedGraph& graph, const PotentialVector& p, const PotentialVector& pstar) {
  PotentialVector diff(pstar);
  for (std::size_t v = 0; v < diff.size(); ++v) diff[v] -= p[v];
  return quadratic_form(graph, diff);
}

std::vector<double> net_outflow(const WeightedGraph& graph, const FlowVector& f) {
  std::vector<double> out(graph.num_vertices(), 0.0);
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    out[graph.edge(e).tail] += f[e];
    out[graph.edge(e).head] -= f[e];
  }
  return out;
}

double conservation_violation(const WeightedGraph& graph, const SupplyVector& b, const FlowVector& f) {
  const std::vector<double> out = net_outflow(graph, f);
  double worst = 0.0;
  for (std::size_t v = 0; v < out.size(); ++v) worst = std::max(worst, std::abs(out[v] - b[v]));
  return worst;
}

}  // namespace dualkosz
