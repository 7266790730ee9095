#include <doctest.h>

#include <cmath>

#include "dualkosz/oracle.hpp"
#include "dualkosz/solver_dual.hpp"
#include "test_support.hpp"

using namespace dualkosz;
using namespace dualkosz::testing;

namespace {

PotentialVector as_potentials(std::span<const double> values) {
  return PotentialVector(std::vector<double>(values.begin(), values.end()));
}

}  // namespace

TEST_CASE("iteration_count") {
  CHECK(iteration_count(4.0, 1.0) == 0);
  CHECK(iteration_count(4.0, 0.01) == static_cast<std::size_t>(std::ceil(4.0 * std::log(100.0))));
  CHECK(error_kind([] { iteration_count(4.0, 0.0); }) == ErrorKind::InvalidArgument);
  CHECK(error_kind([] { iteration_count(4.0, 1.5); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("trajectory replays against a straight-line reference") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    Rng gen = make_stream(seed, 400);
    const std::size_t n = 3 + uniform_below(gen, 20);
    const Instance inst = make_instance(seed, n, n - 1 + uniform_below(gen, 2 * n));
    const RootedTree t = build_tree(inst.graph, TreeStrategy::MinResistanceMST, uniform_below(gen, n));
    for (Backend backend : {Backend::Naive, Backend::Table}) {
      SolverConfig config;
      config.seed = seed;
      config.backend = backend;
      config.max_iters = 300;
      config.trace = TraceLevel::PerIteration;
      const SolveResult r = solve(inst.graph, t, inst.supply, config);
      REQUIRE(r.trace.size() == 300);
      std::vector<double> p(n, 0.0);
      for (const IterationTrace& row : r.trace) {
        CHECK(row.tree_edge == t.parent_edge(row.cut));
        const ReferenceStep ref = reference_dual_step(inst.graph, t, inst.supply, p, row.cut);
        CHECK(std::abs(row.residual - ref.residual) <= 1e-9);
        CHECK(std::abs(row.delta - ref.delta) <= 1e-9 * std::max(1.0, std::abs(ref.delta)));
      }
      for (std::size_t v = 0; v < n; ++v) CHECK(std::abs(r.p[v] - (p[v] - p[t.root()])) <= 1e-8);
      CHECK(r.p[t.root()] == 0.0);
    }
  }
}

TEST_CASE("path example") {
  const WeightedGraph g = path3();
  const RootedTree t(g, std::vector<EdgeId>{0, 1}, 2);
  const SupplyVector b{1, 0, -1};
  SolverConfig config;
  config.max_iters = 20;
  config.trace = TraceLevel::PerIteration;
  const SolveResult r = solve(g, t, b, config);
  // Both cuts carry S = 1 and R = 1, so whichever is drawn first moves by 1.
  CHECK(r.trace.front().delta == 1.0);
  std::vector<double> p(3, 0.0);
  for (const IterationTrace& row : r.trace) {
    CHECK(row.delta == doctest::Approx(reference_dual_step(g, t, b, p, row.cut).delta));
  }
  CHECK(r.p[0] == doctest::Approx(2.0));
  CHECK(r.p[1] == doctest::Approx(1.0));
}

TEST_CASE("zero supply is a fixed point") {
  const Instance inst = make_instance(3, 20, 50);
  const SupplyVector zero(20);
  SolverConfig config;
  config.trace = TraceLevel::PerIteration;
  const SolveResult r = solve(inst.graph, zero, config);
  CHECK(r.iterations > 0);
  for (const IterationTrace& row : r.trace) CHECK(row.delta == 0.0);
  for (double x : r.p) CHECK(x == 0.0);
}

TEST_CASE("warm start at the optimum makes every step vanish") {
  const Instance inst = make_instance(4, 18, 40);
  const RootedTree t = build_tree(inst.graph, TreeStrategy::MinResistanceMST);
  const PotentialVector pstar = dense_solve(inst.graph, inst.supply);
  SolverConfig config;
  config.max_iters = 0;
  DualSolver solver(inst.graph, t, inst.supply, config);
  solver.preload(pstar);
  for (std::size_t v = 0; v < 18; ++v) CHECK(solver.potentials()[v] == doctest::Approx(pstar[v]));
  for (int k = 0; k < 100; ++k) CHECK(std::abs(solver.step().delta) <= 1e-9);
}

TEST_CASE("epsilon 1 runs no iterations") {
  SolverConfig config;
  config.epsilon = 1.0;
  const SolveResult r = solve(path3(), SupplyVector{1, 0, -1}, config);
  CHECK(r.iterations == 0);
  CHECK(r.p == PotentialVector{0, 0, 0});
}

TEST_CASE("each step raises the bound by delta squared over R, and the bound never falls") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Instance inst = make_instance(seed, 30, 90);
    const RootedTree t = build_tree(inst.graph, TreeStrategy::MinResistanceMST);
    SolverConfig config;
    config.seed = seed;
    config.max_iters = 300;
    config.trace = TraceLevel::PerIteration;
    const SolveResult r = solve(inst.graph, t, inst.supply, config);
    const CutQuantities q = cut_quantities(inst.graph, t, inst.supply);
    double previous = 0.0;
    for (const IterationTrace& row : r.trace) {
      const double gain = row.delta * row.delta / q.resistance[row.cut];
      CHECK(std::abs((row.bound - previous) - gain) <= 1e-9 * std::max(1.0, std::abs(row.bound)));
      CHECK(row.bound >= previous - 1e-12 * std::max(1.0, std::abs(row.bound)));
      previous = row.bound;
    }
  }
}

TEST_CASE("tree_defined_flow") {
  SUBCASE("path at zero potentials") {
    const WeightedGraph g = path3();
    const RootedTree t(g, std::vector<EdgeId>{0, 1}, 2);
    CHECK(tree_defined_flow(g, t, PotentialVector{0, 0, 0}, SupplyVector{1, 0, -1}) == FlowVector{1, 1});
  }
  SUBCASE("zero potentials on a tree graph give the tree flow") {
    const WeightedGraph g = star(3);
    const RootedTree t = build_tree(g, TreeStrategy::BFS);
    const FlowVector f = tree_defined_flow(g, t, PotentialVector(4), SupplyVector{-3, 1, 1, 1});
    CHECK(f == FlowVector{-1, -1, -1});
  }
  SUBCASE("optimal potentials give the electrical flow") {
    const Instance inst = make_instance(6, 20, 45);
    const RootedTree t = build_tree(inst.graph, TreeStrategy::BFS);
    const FlowVector f = tree_defined_flow(inst.graph, t, dense_solve(inst.graph, inst.supply), inst.supply);
    const FlowVector fstar = electrical_flow(inst.graph, inst.supply);
    for (EdgeId e = 0; e < inst.graph.num_edges(); ++e) CHECK(std::abs(f[e] - fstar[e]) <= 1e-9);
  }
  SUBCASE("feasible at random potentials") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Instance inst = make_instance(seed, 25, 60);
      const RootedTree t = build_tree(inst.graph, TreeStrategy::MinResistanceMST, seed % 25);
      Rng rng = make_stream(seed, 401);
      const FlowVector f = tree_defined_flow(inst.graph, t, random_potentials(25, rng, 4.0), inst.supply);
      CHECK(conservation_violation(inst.graph, inst.supply, f) <= 1e-9 * max_abs(inst.supply.view()));
    }
  }
}

TEST_CASE("duality_gap") {
  const WeightedGraph g = path3();
  const SupplyVector b{1, 0, -1};
  CHECK(duality_gap(g, b, FlowVector{1, 1}, PotentialVector{0, 0, 0}) == 2.0);
  CHECK(duality_gap(g, b, FlowVector{1, 1}, PotentialVector{2, 1, 0}) == doctest::Approx(0.0));
  CHECK(error_kind([&] { duality_gap(g, b, FlowVector{1, 0}, PotentialVector{0, 0, 0}); }) ==
        ErrorKind::InfeasibleFlow);

  const Instance inst = make_instance(7, 20, 50);
  const PotentialVector pstar = dense_solve(inst.graph, inst.supply);
  const FlowVector fstar = electrical_flow(inst.graph, inst.supply);
  CHECK(std::abs(duality_gap(inst.graph, inst.supply, fstar, pstar)) <=
        1e-8 * energy(inst.graph, fstar));
  const RootedTree t = build_tree(inst.graph, TreeStrategy::BFS);
  Rng rng = make_stream(7, 402);
  const FlowVector f = tree_defined_flow(inst.graph, t, random_potentials(20, rng), inst.supply);
  PotentialVector shifted = pstar;
  for (double& x : shifted) x += 12.5;
  CHECK(rel_close(duality_gap(inst.graph, inst.supply, f, shifted), duality_gap(inst.graph, inst.supply, f, pstar),
                  1e-9));
}

TEST_CASE("the two gap forms agree") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = make_instance(seed, 20, 50);
    const RootedTree t = build_tree(inst.graph, TreeStrategy::MinResistanceMST);
    Rng rng = make_stream(seed, 403);
    for (int k = 0; k < 5; ++k) {
      const FlowVector f = tree_defined_flow(inst.graph, t, random_potentials(20, rng, 2.0), inst.supply);
      const PotentialVector p = random_potentials(20, rng, 2.0);
      CHECK(rel_close(duality_gap(inst.graph, inst.supply, f, p), duality_gap_edgewise(inst.graph, f, p), 1e-9,
                      0.0));
    }
  }
}

TEST_CASE("expected_gain") {
  const WeightedGraph g = path3();
  const RootedTree t(g, std::vector<EdgeId>{0, 1}, 2);
  const SupplyVector b{1, 0, -1};
  CHECK(expected_gain(g, t, b, PotentialVector{0, 0, 0}) == doctest::Approx(1.0));
  CHECK(expected_gain(g, t, b, PotentialVector{2, 1, 0}) == doctest::Approx(0.0));
  CHECK(expected_gain(g, t, SupplyVector(3), PotentialVector{5, 5, 5}) == 0.0);
}

TEST_CASE("expected gain equals gap over tau") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = make_instance(seed, 20, 50);
    const RootedTree t = build_tree(inst.graph, TreeStrategy::MinResistanceMST, seed % 20);
    const double tau_value = tau(inst.graph, t);
    Rng rng = make_stream(seed, 404);
    for (int k = 0; k < 100; ++k) {
      const PotentialVector p = random_potentials(20, rng, 2.0);
      const double gap = duality_gap(inst.graph, inst.supply, tree_defined_flow(inst.graph, t, p, inst.supply), p);
      CHECK(rel_close(expected_gain(inst.graph, t, inst.supply, p), gap / tau_value, 1e-9, 0.0));
    }
  }
}

TEST_CASE("empirical one-step gain matches the expectation") {
  const Instance inst = make_instance(5, 12, 30);
  const RootedTree t = build_tree(inst.graph, TreeStrategy::MinResistanceMST);
  Rng rng = make_stream(5, 405);
  const PotentialVector p = random_potentials(12, rng);
  const double base = potential_bound(inst.graph, inst.supply, p);
  SolverConfig config;
  config.max_iters = 1;
  DualSolver solver(inst.graph, t, inst.supply, config);
  const SamplingDistribution& d = solver.distribution();
  double mean = 0.0;
  constexpr int kDraws = 40000;
  Rng draws = make_stream(5, 406);
  for (int k = 0; k < kDraws; ++k) {
    std::vector<double> x = p.values();
    const VertexId cut = d.sample(draws);
    reference_dual_step(inst.graph, t, inst.supply, x, cut);
    mean += potential_bound(inst.graph, inst.supply, PotentialVector(x)) - base;
  }
  mean /= kDraws;
  CHECK(mean == doctest::Approx(expected_gain(inst.graph, t, inst.supply, p)).epsilon(0.05));
}

TEST_CASE("traced gap is the gap at the iterate before the step") {
  const Instance inst = make_instance(9, 15, 35);
  const RootedTree t = build_tree(inst.graph, TreeStrategy::BFS);
  SolverConfig config;
  config.max_iters = 50;
  config.trace = TraceLevel::WithGap;
  DualSolver solver(inst.graph, t, inst.supply, config);
  for (int k = 0; k < 50; ++k) {
    const PotentialVector before = as_potentials(solver.state().values());
    const double expected =
        duality_gap(inst.graph, inst.supply, tree_defined_flow(inst.graph, t, before, inst.supply), before);
    const IterationTrace row = solver.step();
    REQUIRE(row.gap.has_value());
    CHECK(rel_close(*row.gap, expected, 1e-9, 1e-12));
  }
}

TEST_CASE("solve converges and reports the oracle error") {
  const Instance inst = make_instance(11, 30, 90);
  SolverConfig config;
  config.epsilon = 1e-3;
  config.oracle_check = true;
  config.seed = 11;
  const SolveResult r = solve(inst.graph, inst.supply, config);
  REQUIRE(r.final_error_vs_oracle.has_value());
  const PotentialVector pstar = dense_solve(inst.graph, inst.supply);
  CHECK(rel_close(*r.final_error_vs_oracle, lnorm_error(inst.graph, r.p, pstar) / quadratic_form(inst.graph, pstar),
                  1e-9, 1e-15));
  CHECK(*r.final_error_vs_oracle < 0.05);
  CHECK(r.iterations == iteration_count(r.tau, 1e-3));
}

TEST_CASE("identical seeds give identical results") {
  const Instance inst = make_instance(12, 25, 70);
  SolverConfig config;
  config.seed = 99;
  config.trace = TraceLevel::PerIteration;
  const SolveResult a = solve(inst.graph, inst.supply, config);
  const SolveResult b = solve(inst.graph, inst.supply, config);
  CHECK(a.p == b.p);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t k = 0; k < a.trace.size(); ++k) CHECK(a.trace[k].cut == b.trace[k].cut);
  config.seed = 100;
  CHECK_FALSE(solve(inst.graph, inst.supply, config).p == a.p);
}

TEST_CASE("trace level names round-trip") {
  for (auto level : {TraceLevel::None, TraceLevel::PerIteration, TraceLevel::WithGap}) {
    CHECK(parse_trace_level(to_string(level)) == level);
  }
}
