#include "dualkosz/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "dualkosz/error.hpp"

namespace dualkosz {

PotentialVector dense_solve(const WeightedGraph& graph, const SupplyVector& b, VertexId root) {
  const std::size_t n = graph.num_vertices();
  if (n > kDenseSolveMaxVertices) {
    throw Error(ErrorKind::SizeGuard, std::to_string(n) + " vertices exceeds the dense-solve limit of " +
                                          std::to_string(kDenseSolveMaxVertices));
  }
  if (b.size() != n) throw Error(ErrorKind::DimensionMismatch, "supply length differs from vertex count");
  if (root >= n) throw Error(ErrorKind::VertexOutOfRange, "root " + std::to_string(root));

  const DenseMatrix lap = laplacian_dense(graph);
  const std::size_t k = n - 1;
  std::vector<VertexId> keep;
  keep.reserve(k);
  for (VertexId v = 0; v < n; ++v) {
    if (v != root) keep.push_back(v);
  }

  // Augmented reduced system [A | rhs], k x (k+1).
  const std::size_t width = k + 1;
  std::vector<double> a(k * width);
  double scale = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      a[i * width + j] = lap(keep[i], keep[j]);
      scale = std::max(scale, std::abs(a[i * width + j]));
    }
    a[i * width + k] = b[keep[i]];
  }

  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < k; ++r) {
      if (std::abs(a[r * width + col]) > std::abs(a[pivot * width + col])) pivot = r;
    }
    if (std::abs(a[pivot * width + col]) <= 1e-14 * scale) {
      throw Error(ErrorKind::SingularSystem, "pivot vanished at column " + std::to_string(col));
    }
    if (pivot != col) {
      for (std::size_t j = col; j < width; ++j) std::swap(a[col * width + j], a[pivot * width + j]);
    }
    const double diag = a[col * width + col];
    for (std::size_t r = col + 1; r < k; ++r) {
      const double factor = a[r * width + col] / diag;
      if (factor == 0.0) continue;
      for (std::size_t j = col; j < width; ++j) a[r * width + j] -= factor * a[col * width + j];
    }
  }

  std::vector<double> x(k, 0.0);
  for (std::size_t i = k; i-- > 0;) {
    double acc = a[i * width + k];
    for (std::size_t j = i + 1; j < k; ++j) acc -= a[i * width + j] * x[j];
    x[i] = acc / a[i * width + i];
  }

  PotentialVector p(n);
  for (std::size_t i = 0; i < k; ++i) p[keep[i]] = x[i];
  return p;
}

FlowVector electrical_flow(const WeightedGraph& graph, const SupplyVector& b) {
  return induced_flow(graph, dense_solve(graph, b));
}

double residual_inf(const WeightedGraph& graph, const SupplyVector& b, const PotentialVector& p) {
  const std::vector<double> lp = laplacian_dense(graph).multiply(p.view());
  double worst = 0.0;
  for (std::size_t v = 0; v < lp.size(); ++v) worst = std::max(worst, std::abs(lp[v] - b[v]));
  return worst;
}

BitMatrix BitMatrix::random(std::size_t rows, std::size_t cols, double density, Rng& rng) {
  BitMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, uniform01(rng) < density);
  }
  return m;
}

BitVector random_bits(std::size_t size, double density, Rng& rng) {
  BitVector out(size);
  for (auto& bit : out) bit = uniform01(rng) < density ? 1 : 0;
  return out;
}

bool boolean_vmv(const BitMatrix& m, const BitVector& u, const BitVector& v) {
  if (u.size() != m.rows() || v.size() != m.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "vector lengths do not match the matrix shape");
  }
  bool result = false;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) result = result || (u[i] && m(i, j) && v[j]);
  }
  return result;
}

}  // namespace dualkosz
