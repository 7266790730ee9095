#include "dualkosz/omv_reduction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dualkosz/error.hpp"

namespace dualkosz {

double reduction_threshold(double max_resistance, double max_supply, double alpha) {
  return (1.0 + 1e-6) * std::max(1.0, max_resistance * max_supply * alpha * alpha);
}

ReductionInstance build_instance(const BitMatrix& m, double alpha, const std::optional<SupplyVector>& b) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix must be square");
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw Error(ErrorKind::InvalidArgument, "alpha must be >= 1");
  const std::size_t n = m.rows();
  const std::size_t vertices = 2 * n + 1;
  auto column = [](std::size_t j) { return 1 + j; };
  auto row = [n](std::size_t i) { return 1 + n + i; };

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (m(i, j)) edges.push_back({row(i), column(j), 1.0});
    }
  }
  std::vector<EdgeId> star;
  for (std::size_t j = 0; j < n; ++j) {
    star.push_back(edges.size());
    edges.push_back({column(j), ReductionInstance::special(), 1.0});
  }
  for (std::size_t i = 0; i < n; ++i) {
    star.push_back(edges.size());
    edges.push_back({row(i), ReductionInstance::special(), 1.0});
  }
  WeightedGraph graph(vertices, std::move(edges));

  SupplyVector supply(vertices);
  if (b) {
    supply = validate_instance(graph, *b);
  }
  RootedTree tree(graph, star, ReductionInstance::special());
  const double big = reduction_threshold(graph.num_edges() ? graph.max_resistance() : 1.0, max_abs(supply.view()), alpha);
  return ReductionInstance{m, alpha, big, std::move(graph), std::move(tree), std::move(supply)};
}

ReductionSession::ReductionSession(ReductionInstance instance, Backend backend, std::uint64_t seed)
    : instance_(std::make_unique<const ReductionInstance>(std::move(instance))) {
  const ReductionInstance& inst = *instance_;
  flow_ = std::make_unique<ApproxTreeFlow>(TreeFlowState(inst.graph, inst.tree, inst.supply, backend), inst.alpha,
                                           seed);
}

QueryTranscript ReductionSession::answer_query(const BitVector& u, const BitVector& v) {
  const ReductionInstance& inst = *instance_;
  const std::size_t n = inst.order();
  if (u.size() != n || v.size() != n) {
    throw Error(ErrorKind::DimensionMismatch, "query vectors must have length " + std::to_string(n));
  }
  const double big = inst.big_value;
  const double alpha = inst.alpha;
  const double min_positive_flow = big / inst.graph.max_resistance();

  QueryTranscript out;
  auto add = [&](VertexId vertex, double x) {
    flow_->addvalue(vertex, x);
    out.ops.push_back({TreeFlowOp::AddValue, vertex, x});
  };

  add(ReductionInstance::special(), big);
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i]) add(inst.row_node(i), -big);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!v[j]) continue;
    const VertexId c = inst.column_node(j);
    const double answer = flow_->findflow(c);
    out.ops.push_back({TreeFlowOp::FindFlow, c, answer});

    // f = 0 answers lie in [b·α, b/α] (b < 0) or [b/α, b·α] (b >= 0); any
    // f >= K/‖r‖∞ answers at most (b - K/‖r‖∞)/α. Split the gap in the middle
    // so rounding at an interval edge cannot flip the decision.
    const double supply = inst.supply[c];
    const double zero_low = supply < 0.0 ? supply * alpha : supply / alpha;
    const double positive_high = (supply - min_positive_flow) / alpha;
    const double threshold = 0.5 * (zero_low + positive_high);
    const bool positive = answer < threshold;
    out.probes.push_back({j, answer, threshold, zero_low - positive_high, positive});
    out.answer = out.answer || positive;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i]) add(inst.row_node(i), big);
  }
  add(ReductionInstance::special(), -big);
  return out;
}

std::vector<bool> run_sequence(const BitMatrix& m, const std::vector<Query>& queries, double alpha, Backend backend,
                               std::uint64_t seed, const std::optional<SupplyVector>& b) {
  ReductionSession session(build_instance(m, alpha, b), backend, seed);
  std::vector<bool> answers;
  answers.reserve(queries.size());
  for (const auto& [u, v] : queries) answers.push_back(session.answer_query(u, v).answer);
  return answers;
}

}  // namespace dualkosz
