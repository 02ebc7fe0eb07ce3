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

// Monomial-basis polynomials with exact calculus on [-1, 1]; an oracle for
// integrals of polynomial fields that does not go through the grid.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace tfe::testing {

class Poly {
 public:
  Poly() = default;
  Poly(std::initializer_list<double> c) : c_(c) {}
  explicit Poly(std::vector<double> c) : c_(std::move(c)) {}

  static Poly one_minus_y2() { return {1.0, 0.0, -1.0}; }
  static Poly y() { return {0.0, 1.0}; }

  double operator()(double y) const {
    double s = 0.0;
    for (std::size_t k = c_.size(); k-- > 0;) s = s * y + c_[k];
    return s;
  }

  Poly derivative(int order = 1) const {
    Poly p = *this;
    for (int o = 0; o < order; ++o) {
      std::vector<double> d(p.c_.size() > 1 ? p.c_.size() - 1 : 1, 0.0);
      for (std::size_t k = 1; k < p.c_.size(); ++k) d[k - 1] = k * p.c_[k];
      p.c_ = std::move(d);
    }
    return p;
  }

  /// int_{-1}^{1}
  double integral() const {
    double s = 0.0;
    for (std::size_t k = 0; k < c_.size(); k += 2) s += 2.0 * c_[k] / (k + 1);
    return s;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    std::vector<double> r(a.c_.size() + b.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(r));
  }
  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<double> r(std::max(a.c_.size(), b.c_.size()), 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Poly(std::move(r));
  }
  friend Poly operator*(double s, const Poly& a) {
    Poly r = a;
    for (double& v : r.c_) v *= s;
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-1.0) * b; }

  std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }

 private:
  std::vector<double> c_{0.0};
};

/// E = 1/2 int g'^2
inline double energy(const Poly& g) {
  const auto d = g.derivative();
  return 0.5 * (d * d).integral();
}

/// D = 8 int g''^2 + 1/2 int (1 - y^2) g'''^2
inline double dissipation(const Poly& g) {
  const auto d2 = g.derivative(2), d3 = g.derivative(3);
  return 8.0 * (d2 * d2).integral() + 0.5 * (Poly::one_minus_y2() * d3 * d3).integral();
}

/// B = 2 (g''(1)^2 + g''(-1)^2)
inline double boundary(const Poly& g) {
  const auto d2 = g.derivative(2);
  return 2.0 * (d2(1.0) * d2(1.0) + d2(-1.0) * d2(-1.0));
}

}  // namespace tfe::testing
