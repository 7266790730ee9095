#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dualkosz/graph.hpp"
#include "dualkosz/rng.hpp"
#include "dualkosz/solver_dual.hpp"
#include "dualkosz/spanning_tree.hpp"

namespace dualkosz {

/// The unique b-flow carried by tree edges only, routed leaves-up.
FlowVector tree_solve(const WeightedGraph& graph, const RootedTree& tree, const SupplyVector& b);

/// Distribution over non-tree edges with P_e ∝ (r(e) + Σ_{P(e)} r) / r(e).
class CycleDistribution {
 public:
  /// Throws GraphIsTree when there are no non-tree edges.
  CycleDistribution(const WeightedGraph& graph, const RootedTree& tree);

  std::span<const EdgeId> edges() const noexcept { return edges_; }
  std::span<const double> probabilities() const noexcept { return probs_; }
  /// Σ over non-tree edges of the cycle resistance over r(e).
  double cycle_tau() const noexcept { return cycle_tau_; }

  EdgeId sample(Rng& rng) const;

 private:
  std::vector<EdgeId> edges_;
  std::vector<double> probs_;
  std::vector<double> cumulative_;
  double cycle_tau_ = 0.0;
};

inline CycleDistribution cycle_probabilities(const WeightedGraph& graph, const RootedTree& tree) {
  return CycleDistribution(graph, tree);
}

/// p(root) = 0 and p(k) = Σ r·f along the tree path from k to the root, with
/// f signed in the walking direction.
PotentialVector tree_induced_potentials(const WeightedGraph& graph, const RootedTree& tree, const FlowVector& f);

/// A feasible b-flow repaired one fundamental cycle at a time.
class PrimalState {
 public:
  PrimalState(const WeightedGraph& graph, const RootedTree& tree, FlowVector initial);

  /// Pushes δ = -(Σ_cycle r f) / (Σ_cycle r) around the cycle closed by the
  /// non-tree edge, oriented along that edge, so that Σ_cycle r f = 0.
  /// Returns δ. Conservation is unchanged.
  double cycle_repair(EdgeId nontree_edge);

  const FlowVector& flow() const noexcept { return f_; }

 private:
  const WeightedGraph& graph_;
  const RootedTree& tree_;
  FlowVector f_;
  std::vector<std::vector<PathStep>> cycles_;
};

struct PrimalTrace {
  std::size_t t = 0;
  EdgeId edge = kNoEdge;
  double delta = 0.0;
  /// E(f^{t+1}).
  double energy = 0.0;
  /// B of the tree-induced potentials of f^{t+1}.
  double bound = 0.0;
};

struct PrimalResult {
  FlowVector f;
  PotentialVector p;
  std::size_t iterations = 0;
  double cycle_tau = 0.0;
  std::vector<PrimalTrace> trace;
  std::optional<double> final_error_vs_oracle;
};

/// Iteration budget multiplier c in K = ceil(c · τ_cycle · ln(1/ε)).
inline constexpr double kPrimalIterationFactor = 1.0;

std::size_t primal_iteration_count(double cycle_tau, double epsilon);

/// Validates, builds the configured tree and runs K sample-and-repair steps.
/// Trees with no off-tree edges return the tree solution after zero steps.
PrimalResult solve_primal(const WeightedGraph& graph, const SupplyVector& b, const SolverConfig& config);
PrimalResult solve_primal(const WeightedGraph& graph, const RootedTree& tree, const SupplyVector& b,
                          const SolverConfig& config);

}  // namespace dualkosz
