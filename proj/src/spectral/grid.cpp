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

#include <cmath>
#include <numbers>
#include <string>

#include "tfe/errors.hpp"
#include "tfe/kernels.hpp"
#include "tfe/spectral.hpp"

namespace tfe {

void Matrix::apply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != cols_ || y.size() != rows_)
    throw StructuralError("matrix-vector size mismatch");
  kernels::active().gemv(data_.data(), x.data(), y.data(), rows_, cols_);
}

std::vector<double> Matrix::apply(std::span<const double> x) const {
  std::vector<double> y(rows_);
  apply(x, y);
  return y;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw StructuralError("matrix product size mismatch");
  Matrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

namespace {

constexpr double kPi = std::numbers::pi;

// Diagonal entries replaced by minus the off-diagonal row sum, so that every
// row annihilates constants exactly.
void negative_sum_diagonal(Matrix& d) {
  for (std::size_t i = 0; i < d.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (j != i) s += d(i, j);
    d(i, i) = -s;
  }
}

// First-order matrix in ascending order. With x_j = cos(j pi / N) (descending)
// the ascending node i is x_{N-i}; node differences use the sine identity
// x_a - x_b = 2 sin((a+b) pi/2N) sin((b-a) pi/2N).
Matrix first_order(std::size_t n) {
  const std::size_t N = n - 1;
  Matrix d(n, n);
  auto c = [N](std::size_t k) { return (k == 0 || k == N) ? 2.0 : 1.0; };
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = N - i;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const std::size_t b = N - j;
      const double diffx = 2.0 * std::sin(static_cast<double>(a + b) * kPi / (2.0 * N)) *
                           std::sin((static_cast<double>(b) - static_cast<double>(a)) * kPi /
                                    (2.0 * N));
      const double sign = ((a + b) % 2 == 0) ? 1.0 : -1.0;
      d(i, j) = c(a) / c(b) * sign / diffx;
    }
  }
  negative_sum_diagonal(d);
  return d;
}

// Clenshaw-Curtis weights for the N+1 Lobatto nodes, ascending.
std::vector<double> clenshaw_curtis(std::size_t n) {
  const std::size_t N = n - 1;
  std::vector<double> w(n, 0.0);
  const double Nd = static_cast<double>(N);
  if (N % 2 == 0) {
    w[0] = w[N] = 1.0 / (Nd * Nd - 1.0);
  } else {
    w[0] = w[N] = 1.0 / (Nd * Nd);
  }
  for (std::size_t j = 1; j < N; ++j) {
    const double theta = kPi * static_cast<double>(j) / Nd;
    double v = 1.0;
    if (N % 2 == 0) {
      for (std::size_t k = 1; k < N / 2; ++k)
        v -= 2.0 * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
      v -= std::cos(Nd * theta) / (Nd * Nd - 1.0);
    } else {
      for (std::size_t k = 1; k <= (N - 1) / 2; ++k)
        v -= 2.0 * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
    }
    w[j] = 2.0 * v / Nd;
  }
  // Symmetric, so the ascending order equals the descending one.
  return w;
}

// Antiderivative of T_k vanishing nowhere in particular, evaluated at
// x = cos(theta).
double chebyshev_antiderivative(std::size_t k, double x, double theta) {
  if (k == 0) return x;
  if (k == 1) return 0.5 * x * x;
  const double kd = static_cast<double>(k);
  return std::cos((kd + 1.0) * theta) / (2.0 * (kd + 1.0)) -
         std::cos((kd - 1.0) * theta) / (2.0 * (kd - 1.0));
}

Matrix cumulative_matrix(std::size_t n) {
  const std::size_t N = n - 1;
  const double Nd = static_cast<double>(N);
  // coef(k, j): Chebyshev coefficient k contributed by descending sample j.
  Matrix coef(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) {
      double v = 2.0 / Nd * std::cos(static_cast<double>(k * j) * kPi / Nd);
      if (j == 0 || j == N) v *= 0.5;
      if (k == 0 || k == N) v *= 0.5;
      coef(k, j) = v;
    }
  Matrix q(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    // ascending node i = descending node N - i
    const double theta = kPi * static_cast<double>(N - i) / Nd;
    const double x = -std::cos(kPi * static_cast<double>(i) / Nd);
    for (std::size_t k = 0; k < n; ++k) {
      const double ak = chebyshev_antiderivative(k, x, theta) -
                        chebyshev_antiderivative(k, -1.0, kPi);
      for (std::size_t j = 0; j < n; ++j) q(i, N - j) += ak * coef(k, j);
    }
  }
  return q;
}

}  // namespace

GridPtr Grid::build(std::size_t n) {
  if (n < kMinNodes)
    throw SizingError("grid needs at least " + std::to_string(kMinNodes) + " nodes, got " +
                      std::to_string(n));
  auto g = std::shared_ptr<Grid>(new Grid());
  const std::size_t N = n - 1;
  g->nodes_.resize(n);
  // sin form keeps the nodes exactly antisymmetric about 0.
  for (std::size_t i = 0; i < n; ++i)
    g->nodes_[i] = std::sin(kPi * (2.0 * static_cast<double>(i) - static_cast<double>(N)) /
                            (2.0 * static_cast<double>(N)));
  g->nodes_.front() = -1.0;
  g->nodes_.back() = 1.0;

  g->weights_ = clenshaw_curtis(n);
  g->bary_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    g->bary_[i] = (i == 0 || i == N) ? 0.5 * sign : sign;
  }

  g->diff_[0] = first_order(n);
  for (int k = 1; k < kMaxOrder; ++k) {
    g->diff_[k] = g->diff_[0] * g->diff_[k - 1];
    negative_sum_diagonal(g->diff_[k]);
  }
  g->cumulative_ = cumulative_matrix(n);

  // Barycentric rows for the default dense sample, then the two endpoints.
  g->dense_ = Matrix(kDenseCount + 2, n);
  for (std::size_t i = 0; i < kDenseCount; ++i) {
    const double y = dense_point(i, kDenseCount);
    double den = 0.0;
    std::size_t hit = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (y == g->nodes_[j]) hit = j;
      den += g->bary_[j] / (y - g->nodes_[j]);
    }
    for (std::size_t j = 0; j < n; ++j)
      g->dense_(i, j) = hit < n ? (j == hit ? 1.0 : 0.0) : g->bary_[j] / (y - g->nodes_[j]) / den;
  }
  g->dense_(kDenseCount, 0) = 1.0;
  g->dense_(kDenseCount + 1, N) = 1.0;
  return g;
}

const Matrix& Grid::diff(int order) const {
  if (order < 1 || order > kMaxOrder)
    throw DomainError("derivative order must be in 1..4, got " + std::to_string(order));
  return diff_[order - 1];
}

}  // namespace tfe
