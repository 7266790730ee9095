#include <doctest.h>

#include <cmath>

#include "dualkosz/oracle.hpp"
#include "dualkosz/solver_primal.hpp"
#include "test_support.hpp"

using namespace dualkosz;
using namespace dualkosz::testing;

TEST_CASE("tree_solve") {
  const WeightedGraph g = path3();
  const RootedTree t(g, std::vector<EdgeId>{0, 1}, 2);
  CHECK(tree_solve(g, t, SupplyVector{1, 0, -1}) == FlowVector{1, 1});
  CHECK(tree_solve(g, t, SupplyVector(3)) == FlowVector{0, 0});

  const WeightedGraph s = star(3);
  const RootedTree ts = build_tree(s, TreeStrategy::BFS, 0);
  // Spokes are oriented center -> leaf, so a leaf's supply flows against them.
  CHECK(tree_solve(s, ts, SupplyVector{-6, 1, 2, 3}) == FlowVector{-1, -2, -3});

  const WeightedGraph tri = triangle();
  const RootedTree tt(tri, std::vector<EdgeId>{0, 1}, 2);
  const FlowVector f = tree_solve(tri, tt, SupplyVector{1, 0, -1});
  CHECK(f[2] == 0.0);
  CHECK(conservation_violation(tri, SupplyVector{1, 0, -1}, f) == 0.0);
}

TEST_CASE("cycle_probabilities") {
  SUBCASE("triangle has one cycle") {
    const WeightedGraph g = triangle();
    const auto d = cycle_probabilities(g, RootedTree(g, std::vector<EdgeId>{0, 1}, 2));
    REQUIRE(d.edges().size() == 1);
    CHECK(d.edges()[0] == 2);
    CHECK(d.probabilities()[0] == 1.0);
    CHECK(d.cycle_tau() == doctest::Approx(3.0));
  }
  SUBCASE("identical parallel cycles are uniform") {
    const WeightedGraph g(2, {{0, 1, 1.0}, {0, 1, 1.0}, {1, 0, 1.0}});
    const auto d = cycle_probabilities(g, build_tree(g, TreeStrategy::BFS));
    REQUIRE(d.edges().size() == 2);
    CHECK(d.probabilities()[0] == doctest::Approx(0.5));
    CHECK(d.probabilities()[1] == doctest::Approx(0.5));
  }
  SUBCASE("4-cycle with a chord, path tree through the chord") {
    // Cycle 0-1-2-3-0 plus chord 0-2; the tree is the path 1-2-0-3.
    const WeightedGraph g(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 0, 1.0}, {0, 2, 1.0}});
    const RootedTree t(g, std::vector<EdgeId>{1, 3, 4}, 0);
    const auto d = cycle_probabilities(g, t);
    REQUIRE(d.edges().size() == 2);
    CHECK(d.probabilities()[0] == doctest::Approx(0.5));
    CHECK(d.probabilities()[1] == doctest::Approx(0.5));
    CHECK(d.cycle_tau() == doctest::Approx(6.0));
  }
  SUBCASE("tree graphs have no cycles") {
    const WeightedGraph g = star(3);
    CHECK(error_kind([&] { cycle_probabilities(g, build_tree(g, TreeStrategy::BFS)); }) == ErrorKind::GraphIsTree);
  }
}

TEST_CASE("cycle_repair") {
  // Edges oriented around the cycle 0 -> 1 -> 2 -> 0.
  const WeightedGraph g(3, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}});
  const RootedTree t(g, std::vector<EdgeId>{0, 1}, 2);
  SUBCASE("arithmetic on the triangle") {
    PrimalState s(g, t, FlowVector{1, 1, 0});
    CHECK(s.cycle_repair(2) == doctest::Approx(-2.0 / 3));
    const FlowVector& f = s.flow();
    CHECK(f[0] + f[1] + f[2] == doctest::Approx(0.0));
    CHECK(conservation_violation(g, SupplyVector{1, 0, -1}, f) <= 1e-15);
    SUBCASE("repairing twice changes nothing") {
      CHECK(s.cycle_repair(2) == doctest::Approx(0.0));
    }
  }
  SUBCASE("a KPL-satisfying cycle is left alone") {
    PrimalState s(g, t, FlowVector{1, -1, 0});
    CHECK(s.cycle_repair(2) == 0.0);
    CHECK(s.flow() == FlowVector{1, -1, 0});
  }
  SUBCASE("tree edges are rejected") {
    PrimalState s(g, t, FlowVector{0, 0, 0});
    CHECK(error_kind([&] { s.cycle_repair(0); }) == ErrorKind::InvalidArgument);
  }
}

TEST_CASE("tree_induced_potentials") {
  const WeightedGraph g = path3();
  const RootedTree t(g, std::vector<EdgeId>{0, 1}, 2);
  CHECK(tree_induced_potentials(g, t, FlowVector{0, 0}) == PotentialVector{0, 0, 0});
  CHECK(tree_induced_potentials(g, t, FlowVector{1, 1}) == PotentialVector{2, 1, 0});

  const Instance inst = make_instance(13, 20, 45);
  const RootedTree rt = build_tree(inst.graph, TreeStrategy::MinResistanceMST, 4);
  const PotentialVector p = tree_induced_potentials(inst.graph, rt, electrical_flow(inst.graph, inst.supply));
  const PotentialVector pstar = dense_solve(inst.graph, inst.supply, 4);
  for (std::size_t v = 0; v < 20; ++v) CHECK(std::abs(p[v] - pstar[v]) <= 1e-9);
}

TEST_CASE("solve_primal") {
  SUBCASE("tree instances need no iterations") {
    const WeightedGraph g = star(4);
    const SupplyVector b{-4, 1, 1, 1, 1};
    const PrimalResult r = solve_primal(g, b, SolverConfig{});
    CHECK(r.iterations == 0);
    CHECK(r.f == tree_solve(g, build_tree(g, TreeStrategy::MinResistanceMST), b));
  }
  SUBCASE("triangle reaches the oracle energy") {
    const WeightedGraph g = triangle();
    const SupplyVector b{1, 0, -1};
    SolverConfig config;
    config.epsilon = 1e-6;
    const PrimalResult r = solve_primal(g, b, config);
    CHECK(energy(g, r.f) == doctest::Approx(2.0 / 3));
    CHECK(energy(g, electrical_flow(g, b)) == doctest::Approx(2.0 / 3));
  }
  SUBCASE("zero supply stays zero") {
    const Instance inst = make_instance(1, 15, 30);
    const PrimalResult r = solve_primal(inst.graph, SupplyVector(15), SolverConfig{});
    for (double x : r.f) CHECK(x == 0.0);
  }
}

TEST_CASE("primal trajectory: conservation, monotone energy, duality sandwich") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Instance inst = make_instance(seed, 25, 70);
    const RootedTree t = build_tree(inst.graph, TreeStrategy::MinResistanceMST);
    const double best = energy(inst.graph, electrical_flow(inst.graph, inst.supply));
    SolverConfig config;
    config.seed = seed;
    config.max_iters = 400;
    config.trace = TraceLevel::PerIteration;
    const PrimalResult r = solve_primal(inst.graph, t, inst.supply, config);
    double previous = energy(inst.graph, tree_solve(inst.graph, t, inst.supply));
    for (const PrimalTrace& row : r.trace) {
      CHECK(row.energy <= previous * (1 + 1e-12));
      CHECK(row.bound <= best * (1 + 1e-8));
      CHECK(best <= row.energy * (1 + 1e-8));
      previous = row.energy;
    }
    CHECK(conservation_violation(inst.graph, inst.supply, r.f) <= 1e-9 * max_abs(inst.supply.view()));
  }
}

TEST_CASE("primal converges at the documented budget") {
  int within = 0;
  constexpr int kTrials = 10;
  constexpr double kEps = 0.01;
  for (std::uint64_t seed = 0; seed < kTrials; ++seed) {
    const Instance inst = make_instance(seed, 30, 90);
    SolverConfig config;
    config.seed = seed;
    config.epsilon = kEps;
    const PrimalResult r = solve_primal(inst.graph, inst.supply, config);
    const double best = energy(inst.graph, electrical_flow(inst.graph, inst.supply));
    within += energy(inst.graph, r.f) - best <= kEps * best;
  }
  CHECK(within == kTrials);
}
