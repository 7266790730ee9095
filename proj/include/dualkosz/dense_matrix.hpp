#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dualkosz {

/// Square row-major matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }

  double& operator()(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
  double operator()(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }

  std::span<const double> row(std::size_t r) const { return {data_.data() + r * n_, n_}; }

  std::vector<double> multiply(std::span<const double> x) const {
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n_; ++j) acc += data_[i * n_ + j] * x[j];
      y[i] = acc;
    }
    return y;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

}  // namespace dualkosz
