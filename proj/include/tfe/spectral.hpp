// Copyright 2026 The tfe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Chebyshev-Gauss-Lobatto collocation on [-1, 1]: nodes, Clenshaw-Curtis
// weights, differentiation matrices of order 1..4, barycentric interpolation
// and the cumulative (indefinite) integration matrix.

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace tfe {

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  const double* data() const { return data_.data(); }
  double* data() { return data_.data(); }

  /// y = A x through the active kernel table.
  void apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply(std::span<const double> x) const;

  Matrix operator*(const Matrix& rhs) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

class Grid;
using GridPtr = std::shared_ptr<const Grid>;

/// Immutable collocation grid. Nodes are sorted ascending, nodes()[0] = -1
/// and nodes()[n-1] = 1.
class Grid {
 public:
  static constexpr std::size_t kMinNodes = 8;
  static constexpr int kMaxOrder = 4;
  static constexpr std::size_t kDenseCount = 1024;

  /// Throws SizingError for n < kMinNodes.
  static GridPtr build(std::size_t n);

  std::size_t size() const { return nodes_.size(); }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  std::span<const double> barycentric_weights() const { return bary_; }
  /// Differentiation matrix of the given order (1..4).
  const Matrix& diff(int order) const;
  /// Row i integrates the interpolant from -1 to nodes()[i].
  const Matrix& cumulative() const { return cumulative_; }
  /// (kDenseCount + 2) x n: interpolation onto dense_point(i, kDenseCount),
  /// then the values at -1 and 1.
  const Matrix& dense_sampler() const { return dense_; }

 private:
  Grid() = default;

  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> bary_;
  std::array<Matrix, kMaxOrder> diff_;
  Matrix cumulative_;
  Matrix dense_;
};

/// i-th of `count` equispaced interior points of (-1, 1) (cell midpoints).
inline double dense_point(std::size_t i, std::size_t count) {
  return -1.0 + 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
}

/// Samples on a grid, one per node.
class Field {
 public:
  /// Throws StructuralError on length mismatch and NumericalError on
  /// non-finite samples.
  Field(GridPtr grid, std::vector<double> values);

  static Field zeros(GridPtr grid);
  static Field sample(GridPtr grid, const std::function<double(double)>& f);

  const GridPtr& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double front() const { return values_.front(); }
  double back() const { return values_.back(); }

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// Throws StructuralError unless f lives on `grid`.
void require_same_grid(const Grid& grid, const Field& f);

/// Spectral derivative of the interpolant; order in 1..4.
Field differentiate(const Grid& grid, const Field& f, int order);

/// Clenshaw-Curtis quadrature over [-1, 1].
double integrate(const Grid& grid, const Field& f);
double integrate(const Grid& grid, std::span<const double> values);

/// Barycentric evaluation of the interpolant at y in [-1, 1]; throws
/// DomainError outside.
double interpolate(const Grid& grid, const Field& f, double y);
double interpolate(const Grid& grid, std::span<const double> values, double y);

/// Values of the interpolant on `count` equispaced interior points of (-1,1)
/// followed by the two endpoint values.
std::vector<double> dense_sample(const Grid& grid, std::span<const double> values,
                                 std::size_t count = 1024);

/// Cumulative integral F(y_i) = int_{-1}^{y_i} f.
std::vector<double> cumulative_integral(const Grid& grid, std::span<const double> values);

}  // namespace tfe
