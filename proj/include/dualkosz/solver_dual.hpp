#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "dualkosz/graph.hpp"
#include "dualkosz/rng.hpp"
#include "dualkosz/spanning_tree.hpp"
#include "dualkosz/treeflow.hpp"

namespace dualkosz {

enum class TraceLevel { None, PerIteration, WithGap };

std::string_view to_string(TraceLevel level);
std::optional<TraceLevel> parse_trace_level(std::string_view name);

struct SolverConfig {
  double epsilon = 0.01;
  /// Overrides K = ceil(τ ln(1/ε)) when set.
  std::optional<std::size_t> max_iters;
  std::uint64_t seed = 0;
  TreeStrategy tree_strategy = TreeStrategy::MinResistanceMST;
  VertexId root = 0;
  Backend backend = Backend::Table;
  TraceLevel trace = TraceLevel::None;
  /// Fill SolveResult::final_error_vs_oracle with ‖p*-p‖²_L / ‖p*‖²_L.
  bool oracle_check = false;
};

struct IterationTrace {
  std::size_t t = 0;
  /// Graph id of the sampled tree edge.
  EdgeId tree_edge = kNoEdge;
  /// Child endpoint of the sampled edge, i.e. the cut that was raised.
  VertexId cut = 0;
  /// findflow answer S(C) - f^t(C) before the update.
  double residual = 0.0;
  /// Δ^t = residual · R(C).
  double delta = 0.0;
  /// B(p^{t+1}), recomputed from scratch.
  double bound = 0.0;
  /// gap(f_T(p^t), p^t), at TraceLevel::WithGap only.
  std::optional<double> gap;
};

struct SolveResult {
  /// Final potentials, shifted so p(root) = 0.
  PotentialVector p;
  std::size_t iterations = 0;
  double tau = 0.0;
  std::vector<IterationTrace> trace;
  std::optional<double> final_error_vs_oracle;
};

/// K = ceil(τ ln(1/ε)); ε must lie in (0, 1].
std::size_t iteration_count(double tau, double epsilon);

/// One Dual KOSZ run over a fixed tree: sample a tree edge with probability
/// P_ij, compute Δ = findflow(child) · R(C), raise the child's subtree by Δ.
class DualSolver {
 public:
  DualSolver(const WeightedGraph& graph, const RootedTree& tree, const SupplyVector& b, const SolverConfig& config);

  /// Sets the iterate to p exactly, through addvalue calls only.
  void preload(const PotentialVector& p);

  IterationTrace step();
  void run(std::size_t iterations);

  /// Current iterate, shifted so p(root) = 0.
  PotentialVector potentials() const;

  std::size_t iterations_done() const noexcept { return done_; }
  std::size_t planned_iterations() const noexcept { return planned_; }
  double tau() const noexcept { return distribution_.tau(); }
  const SamplingDistribution& distribution() const noexcept { return distribution_; }
  const TreeFlowState& state() const noexcept { return state_; }
  std::span<const IterationTrace> trace() const noexcept { return trace_; }

 private:
  const WeightedGraph& graph_;
  const RootedTree& tree_;
  const SupplyVector& supply_;
  SolverConfig config_;
  TreeFlowState state_;
  SamplingDistribution distribution_;
  Rng rng_;
  std::size_t planned_ = 0;
  std::size_t done_ = 0;
  std::vector<IterationTrace> trace_;
};

/// Validates, builds the configured tree, and runs K iterations.
SolveResult solve(const WeightedGraph& graph, const SupplyVector& b, const SolverConfig& config);
/// Runs on a caller-supplied tree; b must already be validated.
SolveResult solve(const WeightedGraph& graph, const RootedTree& tree, const SupplyVector& b,
                  const SolverConfig& config);

/// Flow equal to (p(i)-p(j))/r(i,j) off the tree, with tree edges chosen
/// leaves-up so that the result is a feasible b-flow.
FlowVector tree_defined_flow(const WeightedGraph& graph, const RootedTree& tree, const PotentialVector& p,
                             const SupplyVector& b);

/// gap(f, p) = E(f) - B(p). f must be a b-flow within 1e-7·‖b‖∞; throws
/// InfeasibleFlow otherwise.
double duality_gap(const WeightedGraph& graph, const SupplyVector& b, const FlowVector& f, const PotentialVector& p);

/// Σ_e r(e) (f(e) - (p(i)-p(j))/r(e))², the edge-wise form of the gap.
double duality_gap_edgewise(const WeightedGraph& graph, const FlowVector& f, const PotentialVector& p);

/// Σ_{(i,j)∈T} P_ij Δ(C)²/R(C): the exact expected one-step increase of B at p.
double expected_gain(const WeightedGraph& graph, const RootedTree& tree, const SupplyVector& b,
                     const PotentialVector& p);

}  // namespace dualkosz
