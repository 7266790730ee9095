#include "dualkosz/random_instance.hpp"

#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "dualkosz/error.hpp"

namespace dualkosz {

Instance random_instance(const InstanceParams& params, Rng& rng) {
  const std::size_t n = params.vertices;
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 vertices");
  if (params.edges + 1 < n) throw Error(ErrorKind::InvalidArgument, "need at least n-1 edges");
  if (!(params.min_resistance > 0.0 && params.min_resistance <= params.max_resistance)) {
    throw Error(ErrorKind::InvalidArgument, "resistance range must be positive and ordered");
  }

  const double log_lo = std::log(params.min_resistance);
  const double log_hi = std::log(params.max_resistance);
  auto resistance = [&] { return std::exp(uniform(rng, log_lo, log_hi)); };
  auto oriented = [&](VertexId a, VertexId b) {
    if (rng() & 1) std::swap(a, b);
    return Edge{a, b, resistance()};
  };

  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[uniform_below(rng, i + 1)]);

  std::vector<Edge> edges;
  edges.reserve(params.edges);
  for (std::size_t i = 1; i < n; ++i) edges.push_back(oriented(order[i], order[uniform_below(rng, i)]));
  while (edges.size() < params.edges) {
    const VertexId a = uniform_below(rng, n);
    VertexId b = uniform_below(rng, n - 1);
    if (b >= a) ++b;
    edges.push_back(oriented(a, b));
  }
  // Shuffle so tree edges are not always the lowest ids.
  for (std::size_t i = edges.size() - 1; i > 0; --i) std::swap(edges[i], edges[uniform_below(rng, i + 1)]);

  SupplyVector b(n);
  double total = 0.0;
  for (double& x : b) {
    x = uniform(rng, -1.0, 1.0);
    total += x;
  }
  for (double& x : b) x -= total / static_cast<double>(n);
  return {WeightedGraph(n, std::move(edges)), std::move(b)};
}

}  // namespace dualkosz
