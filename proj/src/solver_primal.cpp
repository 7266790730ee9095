#include "dualkosz/solver_primal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dualkosz/error.hpp"
#include "dualkosz/oracle.hpp"

namespace dualkosz {

FlowVector tree_solve(const WeightedGraph& graph, const RootedTree& tree, const SupplyVector& b) {
  FlowVector f(graph.num_edges());
  std::vector<double> excess(b.begin(), b.end());
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

CycleDistribution::CycleDistribution(const WeightedGraph& graph, const RootedTree& tree) {
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    if (tree.is_tree_edge(e)) continue;
    const Edge& edge = graph.edge(e);
    double cycle = edge.resistance;
    for (const PathStep& s : oriented_tree_path(graph, tree, edge.head, edge.tail)) {
      cycle += graph.edge(s.edge).resistance;
    }
    edges_.push_back(e);
    probs_.push_back(cycle / edge.resistance);
  }
  if (edges_.empty()) throw Error(ErrorKind::GraphIsTree, "no off-tree edges to sample");
  cycle_tau_ = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  double running = 0.0;
  for (double& p : probs_) {
    p /= cycle_tau_;
    running += p;
    cumulative_.push_back(running);
  }
  cumulative_.back() = 1.0;
}

EdgeId CycleDistribution::sample(Rng& rng) const {
  const double u = uniform01(rng);
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  return edges_[static_cast<std::size_t>(it - cumulative_.begin())];
}

PotentialVector tree_induced_potentials(const WeightedGraph& graph, const RootedTree& tree, const FlowVector& f) {
  PotentialVector p(graph.num_vertices());
  for (VertexId v : tree.preorder()) {
    if (v == tree.root()) continue;
    const EdgeId e = tree.parent_edge(v);
    const Edge& edge = graph.edge(e);
    const double toward_parent = edge.tail == v ? f[e] : -f[e];
    p[v] = p[tree.parent(v)] + edge.resistance * toward_parent;
  }
  return p;
}

PrimalState::PrimalState(const WeightedGraph& graph, const RootedTree& tree, FlowVector initial)
    : graph_(graph), tree_(tree), f_(std::move(initial)), cycles_(graph.num_edges()) {}

double PrimalState::cycle_repair(EdgeId nontree_edge) {
  if (tree_.is_tree_edge(nontree_edge)) {
    throw Error(ErrorKind::InvalidArgument, "edge " + std::to_string(nontree_edge) + " is a tree edge");
  }
  auto& cycle = cycles_[nontree_edge];
  if (cycle.empty()) {
    const Edge& edge = graph_.edge(nontree_edge);
    cycle.push_back({nontree_edge, 1});
    for (const PathStep& s : oriented_tree_path(graph_, tree_, edge.head, edge.tail)) cycle.push_back(s);
  }
  double drop = 0.0;
  double total_r = 0.0;
  for (const PathStep& s : cycle) {
    const double r = graph_.edge(s.edge).resistance;
    drop += r * s.direction * f_[s.edge];
    total_r += r;
  }
  const double delta = -drop / total_r;
  for (const PathStep& s : cycle) f_[s.edge] += s.direction * delta;
  return delta;
}

std::size_t primal_iteration_count(double cycle_tau, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "epsilon must lie in (0, 1], got " + std::to_string(epsilon));
  }
  return static_cast<std::size_t>(std::ceil(kPrimalIterationFactor * cycle_tau * std::log(1.0 / epsilon)));
}

PrimalResult solve_primal(const WeightedGraph& graph, const RootedTree& tree, const SupplyVector& b,
                          const SolverConfig& config) {
  PrimalResult result;
  PrimalState state(graph, tree, tree_solve(graph, tree, b));
  const bool has_cycles = graph.num_edges() + 1 > graph.num_vertices();
  if (has_cycles) {
    const CycleDistribution dist(graph, tree);
    result.cycle_tau = dist.cycle_tau();
    const std::size_t planned =
        config.max_iters ? *config.max_iters : primal_iteration_count(dist.cycle_tau(), config.epsilon);
    Rng rng = make_stream(config.seed, stream::kPrimalSolver);
    for (std::size_t t = 0; t < planned; ++t) {
      const EdgeId e = dist.sample(rng);
      const double delta = state.cycle_repair(e);
      if (config.trace != TraceLevel::None) {
        PrimalTrace row;
        row.t = t;
        row.edge = e;
        row.delta = delta;
        row.energy = energy(graph, state.flow());
        row.bound = potential_bound(graph, b, tree_induced_potentials(graph, tree, state.flow()));
        result.trace.push_back(row);
      }
    }
    result.iterations = planned;
  }
  result.f = state.flow();
  result.p = tree_induced_potentials(graph, tree, result.f);
  if (config.oracle_check) {
    const PotentialVector pstar = dense_solve(graph, b, tree.root());
    const double scale = quadratic_form(graph, pstar);
    const double err = lnorm_error(graph, result.p, pstar);
    result.final_error_vs_oracle = scale > 0.0 ? err / scale : err;
  }
  return result;
}

PrimalResult solve_primal(const WeightedGraph& graph, const SupplyVector& b, const SolverConfig& config) {
  const SupplyVector supply = validate_instance(graph, b);
  const RootedTree tree = build_tree(graph, config.tree_strategy, config.root);
  return solve_primal(graph, tree, supply, config);
}

}  // namespace dualkosz
