#include <doctest.h>

#include <cmath>

#include "dualkosz/oracle.hpp"
#include "dualkosz/solver_primal.hpp"
#include "test_support.hpp"

using namespace dualkosz;
using namespace dualkosz::testing;

TEST_CASE("dense_solve") {
  SUBCASE("path") {
    const PotentialVector p = dense_solve(path3(), SupplyVector{1, 0, -1}, 2);
    CHECK(p[0] == doctest::Approx(2.0));
    CHECK(p[1] == doctest::Approx(1.0));
    CHECK(p[2] == 0.0);
  }
  SUBCASE("zero supply") {
    CHECK(dense_solve(triangle(), SupplyVector(3)) == PotentialVector{0, 0, 0});
  }
  SUBCASE("triangle") {
    const SupplyVector b{1, 0, -1};
    const PotentialVector p = dense_solve(triangle(), b, 2);
    CHECK(p[0] == doctest::Approx(2.0 / 3));
    CHECK(p[1] == doctest::Approx(1.0 / 3));
    CHECK(p[2] == 0.0);
    CHECK(residual_inf(triangle(), b, p) <= 1e-15);
  }
  SUBCASE("guards") {
    const WeightedGraph disconnected(3, {{0, 1, 1.0}});
    CHECK(error_kind([&] { dense_solve(disconnected, SupplyVector(3)); }) == ErrorKind::SingularSystem);
    CHECK(error_kind([] { dense_solve(path3(), SupplyVector(2)); }) == ErrorKind::DimensionMismatch);
    std::vector<Edge> chain;
    for (std::size_t v = 0; v + 1 < 2001; ++v) chain.push_back({v, v + 1, 1.0});
    const WeightedGraph big(2001, std::move(chain));
    CHECK(error_kind([&] { dense_solve(big, SupplyVector(2001)); }) == ErrorKind::SizeGuard);
  }
}

TEST_CASE("electrical_flow") {
  SUBCASE("tree graph gives the tree flow") {
    const Instance inst = make_instance(3, 12, 11);
    const RootedTree t = build_tree(inst.graph, TreeStrategy::BFS);
    const FlowVector f = electrical_flow(inst.graph, inst.supply);
    const FlowVector ft = tree_solve(inst.graph, t, inst.supply);
    for (EdgeId e = 0; e < 11; ++e) CHECK(std::abs(f[e] - ft[e]) <= 1e-12);
  }
  SUBCASE("zero supply") {
    CHECK(electrical_flow(triangle(), SupplyVector(3)) == FlowVector{0, 0, 0});
  }
  SUBCASE("triangle splits 2:1") {
    const FlowVector f = electrical_flow(triangle(), SupplyVector{1, 0, -1});
    CHECK(f[0] == doctest::Approx(1.0 / 3));
    CHECK(f[1] == doctest::Approx(1.0 / 3));
    CHECK(f[2] == doctest::Approx(2.0 / 3));
    CHECK(energy(triangle(), f) == doctest::Approx(2.0 / 3));
  }
}

TEST_CASE("residual bound and strong duality on random instances") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng gen = make_stream(seed, 500);
    const std::size_t n = 2 + uniform_below(gen, 99);
    const Instance inst = make_instance(seed, n, n - 1 + uniform_below(gen, 3 * n));
    const PotentialVector p = dense_solve(inst.graph, inst.supply);
    CHECK(residual_inf(inst.graph, inst.supply, p) <= 1e-9 * max_abs(inst.supply.view()));
    const double e = energy(inst.graph, electrical_flow(inst.graph, inst.supply));
    CHECK(rel_close(e, potential_bound(inst.graph, inst.supply, p), 1e-8, 0.0));
  }
}

TEST_CASE("the electrical flow minimizes energy") {
  const Instance inst = make_instance(21, 20, 50);
  const WeightedGraph& g = inst.graph;
  const RootedTree t = build_tree(g, TreeStrategy::BFS);
  const FlowVector fstar = electrical_flow(g, inst.supply);
  const double best = energy(g, fstar);
  std::vector<EdgeId> off;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!t.is_tree_edge(e)) off.push_back(e);
  }
  Rng rng = make_stream(21, 501);
  for (int k = 0; k < 100; ++k) {
    FlowVector f = fstar;
    // A random multiple of one fundamental cycle.
    const EdgeId e = off[uniform_below(rng, off.size())];
    const double amount = uniform(rng, -1.0, 1.0);
    f[e] += amount;
    for (const PathStep& s : oriented_tree_path(g, t, g.edge(e).head, g.edge(e).tail)) f[s.edge] += s.direction * amount;
    CHECK(conservation_violation(g, inst.supply, f) <= 1e-12);
    CHECK(energy(g, f) >= best);
  }
}

TEST_CASE("boolean_vmv") {
  BitMatrix eye(2, 2);
  eye.set(0, 0, true);
  eye.set(1, 1, true);
  CHECK_FALSE(boolean_vmv(eye, BitVector{1, 0}, BitVector{0, 1}));
  CHECK(boolean_vmv(eye, BitVector{1, 0}, BitVector{1, 0}));

  BitMatrix ones(3, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) ones.set(i, j, true);
  }
  CHECK(boolean_vmv(ones, BitVector{0, 1, 0}, BitVector{0, 0, 1}));
  CHECK_FALSE(boolean_vmv(ones, BitVector{0, 0, 0}, BitVector{1, 1, 1}));

  Rng rng = make_stream(8, 502);
  for (int k = 0; k < 50; ++k) {
    const BitMatrix m = BitMatrix::random(8, 8, 0.2, rng);
    const BitVector u = random_bits(8, 0.3, rng);
    const BitVector v = random_bits(8, 0.3, rng);
    bool expected = false;
    for (std::size_t i = 0; i < 8; ++i) {
      for (std::size_t j = 0; j < 8; ++j) expected = expected || (u[i] && m(i, j) && v[j]);
    }
    CHECK(boolean_vmv(m, u, v) == expected);
  }
  CHECK(error_kind([&] { boolean_vmv(eye, BitVector{1}, BitVector{1, 0}); }) == ErrorKind::DimensionMismatch);
}
