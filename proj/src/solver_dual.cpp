#include "dualkosz/solver_dual.hpp"

#include <cmath>
#include <string>

#include "dualkosz/error.hpp"
#include "dualkosz/oracle.hpp"

namespace dualkosz {

std::string_view to_string(TraceLevel level) {
  switch (level) {
    case TraceLevel::None: return "none";
    case TraceLevel::PerIteration: return "iter";
    case TraceLevel::WithGap: return "gap";
  }
  return "unknown";
}

std::optional<TraceLevel> parse_trace_level(std::string_view name) {
  if (name == "none") return TraceLevel::None;
  if (name == "iter") return TraceLevel::PerIteration;
  if (name == "gap") return TraceLevel::WithGap;
  return std::nullopt;
}

std::size_t iteration_count(double tau, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "epsilon must lie in (0, 1], got " + std::to_string(epsilon));
  }
  return static_cast<std::size_t>(std::ceil(tau * std::log(1.0 / epsilon)));
}

DualSolver::DualSolver(const WeightedGraph& graph, const RootedTree& tree, const SupplyVector& b,
                       const SolverConfig& config)
    : graph_(graph),
      tree_(tree),
      supply_(b),
      config_(config),
      state_(graph, tree, b, config.backend),
      distribution_(graph, tree, state_.cuts()),
      rng_(make_stream(config.seed, stream::kSolver)) {
  planned_ = config.max_iters ? *config.max_iters : iteration_count(distribution_.tau(), config.epsilon);
  if (config_.trace != TraceLevel::None) trace_.reserve(planned_);
}

void DualSolver::preload(const PotentialVector& p) {
  const auto current = state_.values();
  const VertexId root = tree_.root();
  // Adjust each subtree so the edge difference to the parent matches p; the
  // differences telescope along every root path.
  std::vector<double> shift(graph_.num_vertices());
  shift[root] = p[root] - current[root];
  for (VertexId v : tree_.preorder()) {
    if (v == root) continue;
    const VertexId u = tree_.parent(v);
    shift[v] = (p[v] - p[u]) - (current[v] - current[u]);
  }
  for (VertexId v : tree_.preorder()) state_.addvalue(v, shift[v]);
}

IterationTrace DualSolver::step() {
  IterationTrace row;
  row.t = done_;
  row.cut = distribution_.sample(rng_);
  row.tree_edge = tree_.parent_edge(row.cut);
  row.residual = state_.findflow(row.cut);
  row.delta = row.residual * state_.cuts().resistance[row.cut];

  if (config_.trace == TraceLevel::WithGap) {
    const PotentialVector before(std::vector<double>(state_.values().begin(), state_.values().end()));
    row.gap = duality_gap_edgewise(graph_, tree_defined_flow(graph_, tree_, before, supply_), before);
  }
  state_.addvalue(row.cut, row.delta);
  if (config_.trace != TraceLevel::None) {
    const PotentialVector after(std::vector<double>(state_.values().begin(), state_.values().end()));
    row.bound = potential_bound(graph_, supply_, after);
    trace_.push_back(row);
  }
  ++done_;
  return row;
}

void DualSolver::run(std::size_t iterations) {
  for (std::size_t i = 0; i < iterations; ++i) step();
}

PotentialVector DualSolver::potentials() const {
  const auto values = state_.values();
  const double offset = values[tree_.root()];
  PotentialVector p(values.size());
  for (std::size_t v = 0; v < values.size(); ++v) p[v] = values[v] - offset;
  return p;
}

SolveResult solve(const WeightedGraph& graph, const RootedTree& tree, const SupplyVector& b,
                  const SolverConfig& config) {
  DualSolver solver(graph, tree, b, config);
  solver.run(solver.planned_iterations());
  SolveResult result;
  result.p = solver.potentials();
  result.iterations = solver.iterations_done();
  result.tau = solver.tau();
  result.trace.assign(solver.trace().begin(), solver.trace().end());
  if (config.oracle_check) {
    const PotentialVector pstar = dense_solve(graph, b, tree.root());
    const double scale = quadratic_form(graph, pstar);
    const double err = lnorm_error(graph, result.p, pstar);
    result.final_error_vs_oracle = scale > 0.0 ? err / scale : err;
  }
  return result;
}

SolveResult solve(const WeightedGraph& graph, const SupplyVector& b, const SolverConfig& config) {
  const SupplyVector supply = validate_instance(graph, b);
  const RootedTree tree = build_tree(graph, config.tree_strategy, config.root);
  return solve(graph, tree, supply, config);
}

FlowVector tree_defined_flow(const WeightedGraph& graph, const RootedTree& tree, const PotentialVector& p,
                             const SupplyVector& b) {
  FlowVector f(graph.num_edges());
  // What each vertex still has to push after the off-tree edges take their
  // Ohm's-law flow.
  std::vector<double> excess(graph.num_vertices());
  for (VertexId v = 0; v < graph.num_vertices(); ++v) excess[v] = b[v];
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    if (tree.is_tree_edge(e)) continue;
    const Edge& edge = graph.edge(e);
    f[e] = (p[edge.tail] - p[edge.head]) / edge.resistance;
    excess[edge.tail] -= f[e];
    excess[edge.head] += f[e];
  }
  const auto order = tree.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    if (v == tree.root()) continue;
    const EdgeId e = tree.parent_edge(v);
    f[e] = graph.edge(e).tail == v ? excess[v] : -excess[v];
    excess[tree.parent(v)] += excess[v];
  }
  return f;
}

double duality_gap(const WeightedGraph& graph, const SupplyVector& b, const FlowVector& f, const PotentialVector& p) {
  const double violation = conservation_violation(graph, b, f);
  if (violation > 1e-7 * max_abs(b.view()) && violation > 0.0) {
    throw Error(ErrorKind::InfeasibleFlow, "flow misses conservation by " + std::to_string(violation));
  }
  return energy(graph, f) - potential_bound(graph, b, p);
}

double duality_gap_edgewise(const WeightedGraph& graph, const FlowVector& f, const PotentialVector& p) {
  double acc = 0.0;
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    const Edge& edge = graph.edge(e);
    const double d = f[e] - (p[edge.tail] - p[edge.head]) / edge.resistance;
    acc += edge.resistance * d * d;
  }
  return acc;
}

double expected_gain(const WeightedGraph& graph, const RootedTree& tree, const SupplyVector& b,
                     const PotentialVector& p) {
  const CutQuantities cuts = cut_quantities(graph, tree, b);
  const double t = tau(graph, tree, cuts);
  // f(C) is the sum over C of the per-vertex net outflow, since edges inside C
  // cancel.
  std::vector<double> out = net_outflow(graph, induced_flow(graph, p));
  const auto order = tree.preorder();
  double gain = 0.0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    if (v == tree.root()) continue;
    out[tree.parent(v)] += out[v];
    const double delta = (cuts.supply[v] - out[v]) * cuts.resistance[v];
    const double prob = graph.edge(tree.parent_edge(v)).resistance / (t * cuts.resistance[v]);
    gain += prob * delta * delta / cuts.resistance[v];
  }
  return gain;
}

}  // namespace dualkosz
