#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "dualkosz/dense_matrix.hpp"
#include "dualkosz/vectors.hpp"

namespace dualkosz {

using VertexId = std::size_t;
using EdgeId = std::size_t;

inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

/// An undirected edge with a fixed orientation tail -> head. Flow is positive
/// when it moves from tail to head.
struct Edge {
  VertexId tail;
  VertexId head;
  double resistance;
};

struct Incidence {
  EdgeId edge;
  VertexId other;
  bool outgoing;  // true when this vertex is the edge's tail
};

/// Undirected multigraph with positive resistances. Parallel edges are
/// allowed; self-loops are not. Immutable after construction.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(std::size_t num_vertices, std::vector<Edge> edges);

  std::size_t num_vertices() const noexcept { return adjacency_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Incidence> incident(VertexId v) const { return adjacency_[v]; }

  double max_resistance() const noexcept;
  bool is_connected() const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

/// Checks connectivity and Σb = 0 (within 1e-9·‖b‖∞) and returns b
/// re-centered to mean zero. Resistance and self-loop checks happen when the
/// graph is constructed.
SupplyVector validate_instance(const WeightedGraph& graph, const SupplyVector& b);

DenseMatrix laplacian_dense(const WeightedGraph& graph);

/// p^T L p, evaluated edge-wise.
double quadratic_form(const WeightedGraph& graph, const PotentialVector& p);

/// Σ_e r(e) f(e)^2.
double energy(const WeightedGraph& graph, const FlowVector& f);

/// B(p) = 2 b^T p - p^T L p. A lower bound on the energy of every b-flow.
double potential_bound(const WeightedGraph& graph, const SupplyVector& b, const PotentialVector& p);

/// Ohm's law: f(i,j) = (p(i) - p(j)) / r(i,j).
FlowVector induced_flow(const WeightedGraph& graph, const PotentialVector& p);

/// ‖p* - p‖²_L.
double lnorm_error(const WeightedGraph& graph, const PotentialVector& p, const PotentialVector& pstar);

/// Net outflow at each vertex. f is a b-flow iff this equals b.
std::vector<double> net_outflow(const WeightedGraph& graph, const FlowVector& f);

/// max_v |net_outflow(v) - b(v)|.
double conservation_violation(const WeightedGraph& graph, const SupplyVector& b, const FlowVector& f);

double max_abs(std::span<const double> values);

}  // namespace dualkosz
