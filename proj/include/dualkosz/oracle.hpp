#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dualkosz/graph.hpp"
#include "dualkosz/rng.hpp"

namespace dualkosz {

inline constexpr std::size_t kDenseSolveMaxVertices = 2000;

/// Exact solve of Lp = b: delete the root row and column, eliminate with
/// partial pivoting, and return p with p(root) = 0. The instance must already
/// be validated. Throws SizeGuard above kDenseSolveMaxVertices vertices and
/// SingularSystem if a pivot vanishes.
PotentialVector dense_solve(const WeightedGraph& graph, const SupplyVector& b, VertexId root = 0);

/// The electrical b-flow, induced by dense_solve's potentials.
FlowVector electrical_flow(const WeightedGraph& graph, const SupplyVector& b);

/// ‖Lp - b‖∞ via the dense Laplacian.
double residual_inf(const WeightedGraph& graph, const SupplyVector& b, const PotentialVector& p);

/// Boolean vector with one byte per entry.
using BitVector = std::vector<std::uint8_t>;

/// Row-major Boolean matrix.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), bits_(rows * cols, 0) {}

  static BitMatrix random(std::size_t rows, std::size_t cols, double density, Rng& rng);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool operator()(std::size_t i, std::size_t j) const { return bits_[i * cols_ + j] != 0; }
  void set(std::size_t i, std::size_t j, bool value) { bits_[i * cols_ + j] = value ? 1 : 0; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

BitVector random_bits(std::size_t size, double density, Rng& rng);

/// u^T M v over the Boolean semiring (OR of ANDs), by the triple loop.
bool boolean_vmv(const BitMatrix& m, const BitVector& u, const BitVector& v);

}  // namespace dualkosz
