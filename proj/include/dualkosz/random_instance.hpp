#pragma once

#include <cstddef>

#include "dualkosz/graph.hpp"
#include "dualkosz/rng.hpp"

namespace dualkosz {

struct Instance {
  WeightedGraph graph;
  SupplyVector supply;
};

struct InstanceParams {
  std::size_t vertices = 10;
  /// Total edge count, at least vertices - 1.
  std::size_t edges = 20;
  double min_resistance = 0.1;
  double max_resistance = 10.0;
};

/// Seeded random connected instance: a random spanning tree (each vertex in a
/// random order attaches to a uniformly chosen earlier one), then extra edges
/// between uniform distinct pairs, parallel edges allowed. Resistances are
/// log-uniform in [min, max]; orientations are random; b is uniform in [-1, 1]
/// re-centered to sum zero.
Instance random_instance(const InstanceParams& params, Rng& rng);

}  // namespace dualkosz
