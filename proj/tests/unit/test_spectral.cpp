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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tfe/errors.hpp"
#include "tfe/spectral.hpp"

using namespace tfe;

TEST_CASE("grid construction") {
  const auto g = Grid::build(8);
  CHECK(g->size() == 8);
  CHECK(g->nodes().front() == -1.0);
  CHECK(g->nodes().back() == 1.0);
  double w = 0.0;
  for (double x : g->weights()) w += x;
  CHECK(w == doctest::Approx(2.0).epsilon(1e-15));
  for (std::size_t i = 1; i < g->size(); ++i) CHECK(g->nodes()[i] > g->nodes()[i - 1]);
  CHECK_THROWS_AS(Grid::build(7), SizingError);
}

TEST_CASE("nodes are antisymmetric") {
  for (std::size_t n : {9u, 16u, 33u, 64u}) {
    const auto g = Grid::build(n);
    for (std::size_t i = 0; i < n; ++i) CHECK(g->nodes()[i] == -g->nodes()[n - 1 - i]);
  }
}

TEST_CASE("integration of polynomials") {
  const auto g = Grid::build(32);
  auto q = [&](auto f) { return integrate(*g, Field::sample(g, f)); };
  CHECK(std::abs(q([](double y) { return 1.0 - y * y; }) - 4.0 / 3.0) < 1e-12);
  CHECK(std::abs(q([](double y) { return y; })) < 1e-14);
  CHECK(std::abs(q([](double) { return 1.0; }) - 2.0) < 1e-14);
  CHECK(std::abs(q([](double y) { return y * y; }) - 2.0 / 3.0) < 1e-12);
  CHECK(std::abs(q([](double y) { return (1 - y * y) * (1 - y * y); }) - 16.0 / 15.0) < 1e-12);
  // exact through degree n - 2
  for (int d = 0; d <= 30; d += 2)
    CHECK(std::abs(q([d](double y) { return std::pow(y, d); }) - 2.0 / (d + 1)) < 1e-12 * 2.0 / (d + 1) + 1e-15);
}

TEST_CASE("differentiation of polynomials") {
  const auto g = Grid::build(24);
  const auto y = g->nodes();
  const auto sq = differentiate(*g, Field::sample(g, [](double t) { return t * t; }), 1);
  for (std::size_t i = 0; i < y.size(); ++i) CHECK(std::abs(sq[i] - 2 * y[i]) < 1e-12);
  const auto lin = differentiate(*g, Field::sample(g, [](double t) { return t; }), 1);
  for (std::size_t i = 0; i < y.size(); ++i) CHECK(std::abs(lin[i] - 1.0) < 1e-12);
  const auto quartic =
      differentiate(*g, Field::sample(g, [](double t) { return (1 - t * t) * (1 - t * t); }), 4);
  for (std::size_t i = 0; i < y.size(); ++i) CHECK(std::abs(quartic[i] - 24.0) < 1e-7);
  for (int k = 1; k <= 4; ++k) {
    const auto c = differentiate(*g, Field::sample(g, [](double) { return 3.5; }), k);
    // negative-sum diagonals: zero up to rounding of the row sum
    for (std::size_t i = 0; i < y.size(); ++i) {
      double row = 0.0;
      for (double a : g->diff(k).row(i)) row += std::abs(a);
      CHECK(std::abs(c[i]) <= 3.5 * row * 1e-15);
    }
    if (k == 1)
      for (std::size_t i = 0; i < y.size(); ++i) CHECK(std::abs(c[i]) < 1e-12);
  }
  CHECK_THROWS_AS(g->diff(0), DomainError);
  CHECK_THROWS_AS(g->diff(5), DomainError);
}

TEST_CASE("derivative rounding stays within n^(2k) eps") {
  const auto g = Grid::build(48);
  const auto y = g->nodes();
  const auto f = Field::sample(g, [](double t) { return std::pow(t, 9) - 2 * std::pow(t, 5) + t; });
  for (int k = 1; k <= 4; ++k) {
    const auto d = differentiate(*g, f, k);
    double worst = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      double exact = 0.0;
      // derivative of t^9 - 2 t^5 + t
      auto falling = [](int p, int k) {
        double f = 1.0;
        for (int j = 0; j < k; ++j) f *= p - j;
        return f;
      };
      exact += falling(9, k) * std::pow(y[i], 9 - k);
      if (k <= 5) exact -= 2 * falling(5, k) * std::pow(y[i], 5 - k);
      if (k == 1) exact += 1.0;
      worst = std::max(worst, std::abs(d[i] - exact));
    }
    CAPTURE(k);
    CHECK(worst < std::pow(48.0, 2 * k) * 1e-15 * 10.0);
  }
}

TEST_CASE("fundamental theorem of calculus") {
  const auto g = Grid::build(40);
  auto f = Field::sample(g, [](double y) { return std::exp(std::sin(2 * y)); });
  const double lhs = integrate(*g, differentiate(*g, f, 1));
  CHECK(std::abs(lhs - (f.back() - f.front())) < 1e-10);
}

TEST_CASE("interpolation") {
  const auto g = Grid::build(32);
  const auto f = Field::sample(g, [](double y) { return 1 - y * y; });
  CHECK(interpolate(*g, f, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(interpolate(*g, f, g->nodes()[5]) == f[5]);
  const auto c = Field::sample(g, [](double y) { return std::cos(std::numbers::pi * y / 2); });
  CHECK(std::abs(interpolate(*g, c, 0.3) - std::cos(0.15 * std::numbers::pi)) < 1e-10);
  CHECK_THROWS_AS(interpolate(*g, c, 1.0 + 1e-9), DomainError);
}

TEST_CASE("dense sampling matches pointwise interpolation") {
  const auto g = Grid::build(33);
  const auto f = Field::sample(g, [](double y) { return std::tanh(3 * y) + y * y; });
  const auto d = dense_sample(*g, f.values());
  REQUIRE(d.size() == Grid::kDenseCount + 2);
  for (std::size_t i = 0; i < Grid::kDenseCount; i += 37)
    CHECK(d[i] == doctest::Approx(interpolate(*g, f, dense_point(i, Grid::kDenseCount))).epsilon(1e-13));
  CHECK(d[Grid::kDenseCount] == f.front());
  CHECK(d[Grid::kDenseCount + 1] == f.back());
  const auto odd = dense_sample(*g, f.values(), 100);
  CHECK(odd.size() == 102);
}

TEST_CASE("cumulative integral") {
  const auto g = Grid::build(20);
  const auto f = Field::sample(g, [](double y) { return 3 * y * y; });
  const auto F = cumulative_integral(*g, f.values());
  for (std::size_t i = 0; i < g->size(); ++i)
    CHECK(std::abs(F[i] - (std::pow(g->nodes()[i], 3) + 1.0)) < 1e-13);
  // last row reproduces the quadrature weights
  const auto& C = g->cumulative();
  for (std::size_t j = 0; j < g->size(); ++j)
    CHECK(std::abs(C(g->size() - 1, j) - g->weights()[j]) < 1e-14);
}

TEST_CASE("field invariants") {
  const auto g = Grid::build(10);
  CHECK_THROWS_AS(Field(g, std::vector<double>(9, 0.0)), StructuralError);
  std::vector<double> bad(10, 0.0);
  bad[3] = std::nan("");
  CHECK_THROWS_AS(Field(g, bad), NumericalError);
  const auto other = Grid::build(12);
  CHECK_THROWS_AS(differentiate(*other, Field::zeros(g), 1), StructuralError);
}

TEST_CASE("spectral convergence of quadrature") {
  auto err = [](std::size_t n) {
    const auto g = Grid::build(n);
    const double exact = 2.0 * std::sinh(1.0) / 1.0;  // int e^y
    return std::abs(integrate(*g, Field::sample(g, [](double y) { return std::exp(y); })) - exact);
  };
  CHECK(err(8) < 1e-8);
  CHECK(err(12) < 1e-14);
}
