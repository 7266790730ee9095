#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "dualkosz/graph.hpp"
#include "dualkosz/oracle.hpp"
#include "dualkosz/spanning_tree.hpp"
#include "dualkosz/treeflow.hpp"

namespace dualkosz {

/// Star-rooted TreeFlow encoding of an n x n Boolean matrix.
///
/// Vertex 0 is the special node x, vertex 1+j is column node c_j and vertex
/// 1+n+i is row node d_i. Edges are (d_i, c_j) for every M_ij = 1 followed by
/// (c_j, x) and (d_i, x) for all i, j; every resistance is 1. The tree is the
/// star of x-edges, so every non-root subtree is a single vertex.
struct ReductionInstance {
  BitMatrix matrix;
  double alpha = 1.0;
  /// K: the value offset that separates zero from positive cut flow.
  double big_value = 1.0;
  WeightedGraph graph;
  RootedTree tree;
  SupplyVector supply;

  std::size_t order() const noexcept { return matrix.rows(); }
  static constexpr VertexId special() noexcept { return 0; }
  VertexId column_node(std::size_t j) const noexcept { return 1 + j; }
  VertexId row_node(std::size_t i) const noexcept { return 1 + order() + i; }
};

/// K = (1 + 1e-6) · max(1, ‖r‖∞ ‖b‖∞ α²).
double reduction_threshold(double max_resistance, double max_supply, double alpha);

/// b defaults to zero; a given b must have 2n+1 entries summing to zero.
ReductionInstance build_instance(const BitMatrix& m, double alpha, const std::optional<SupplyVector>& b = {});

enum class TreeFlowOp { AddValue, FindFlow };

struct TranscriptEntry {
  TreeFlowOp op;
  VertexId vertex;
  /// addvalue amount, or the returned answer for findflow.
  double amount;
};

struct ProbeRecord {
  std::size_t column;
  /// findflow(c_j) as returned, possibly approximate.
  double answer;
  /// Midpoint of the gap between the two answer intervals; answers below it
  /// mean f(c_j) > 0.
  double threshold;
  /// Gap between the answer intervals for f = 0 and for f >= K/‖r‖∞. Positive
  /// whenever K respects the reduction threshold.
  double separation;
  bool positive;
};

struct QueryTranscript {
  std::vector<TranscriptEntry> ops;
  std::vector<ProbeRecord> probes;
  bool answer = false;
};

/// Online u^T M v queries against one TreeFlow instance.
///
/// Each query raises everything by K through the root, lowers the row nodes
/// with u_i = 1 back by K, and probes findflow(c_j) for every v_j = 1. The
/// probed column nodes then sit at the same value as x and as the rows with
/// u_i = 0, so f(c_j) counts exactly the edges to rows with u_i = 1, K per
/// edge. All changes are undone before the query returns.
class ReductionSession {
 public:
  ReductionSession(ReductionInstance instance, Backend backend, std::uint64_t seed);

  QueryTranscript answer_query(const BitVector& u, const BitVector& v);

  const ReductionInstance& instance() const noexcept { return *instance_; }
  std::span<const double> values() const noexcept { return flow_->inner().values(); }
  double exact_findflow(VertexId v) const { return flow_->exact_findflow(v); }

 private:
  std::unique_ptr<const ReductionInstance> instance_;
  std::unique_ptr<ApproxTreeFlow> flow_;
};

using Query = std::pair<BitVector, BitVector>;

/// Answers every query in order; α = 1 gives exact findflow answers.
std::vector<bool> run_sequence(const BitMatrix& m, const std::vector<Query>& queries, double alpha,
                               Backend backend = Backend::Table, std::uint64_t seed = 0,
                               const std::optional<SupplyVector>& b = {});

}  // namespace dualkosz
