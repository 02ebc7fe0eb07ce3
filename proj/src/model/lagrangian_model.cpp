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

#include <algorithm>
#include <cmath>
#include <string>

#include "tfe/errors.hpp"
#include "tfe/kernels.hpp"
#include "tfe/model.hpp"

namespace tfe::model {

PerturbationField::PerturbationField(Field g, double time) : g_(std::move(g)), time_(time) {
  if (std::fabs(g_.front()) > kBoundaryTolerance || std::fabs(g_.back()) > kBoundaryTolerance)
    throw DomainError("perturbation violates g(+-1) = 0: g(-1) = " + std::to_string(g_.front()) +
                      ", g(1) = " + std::to_string(g_.back()));
  for (double v : g_.values())
    if (!(1.0 + v > 0.0)) throw PositivityError("1 + g <= 0: Lagrangian map not invertible");
}

Jet jet(const PerturbationField& g) {
  const Grid& grid = g.grid();
  Jet j;
  j.g.assign(g.values().begin(), g.values().end());
  j.d1 = grid.diff(1).apply(j.g);
  j.d2 = grid.diff(2).apply(j.g);
  j.d3 = grid.diff(3).apply(j.g);
  j.d4 = grid.diff(4).apply(j.g);
  return j;
}

Matrix linear_operator_matrix(const Grid& grid) {
  const std::size_t n = grid.size();
  const auto y = grid.nodes();
  const Matrix& d2 = grid.diff(2);
  const Matrix& d3 = grid.diff(3);
  const Matrix& d4 = grid.diff(4);
  Matrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = 0.5 * (1.0 - y[i] * y[i]);
    for (std::size_t j = 0; j < n; ++j)
      l(i, j) = -10.0 * d2(i, j) - 5.0 * y[i] * d3(i, j) + w * d4(i, j);
  }
  return l;
}

Field apply_linear(const PerturbationField& g) {
  const Jet j = jet(g);
  const auto y = g.grid().nodes();
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = -10.0 * j.d2[i] - 5.0 * y[i] * j.d3[i] + 0.5 * (1.0 - y[i] * y[i]) * j.d4[i];
  return Field(g.grid_ptr(), std::move(out));
}

namespace {

std::array<std::vector<double>, kSummands> summands_from(const Jet& j, std::span<const double> y) {
  const std::size_t n = y.size();
  std::array<std::vector<double>, kSummands> s;
  for (auto& v : s) v.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double G = 1.0 + j.g[i];
    const double G2 = G * G, G3 = G2 * G, G4 = G3 * G;
    const double F = G4 * G - 1.0;  // (1+g)^5 - 1
    const double q = 1.0 - y[i] * y[i];
    const double g1 = j.d1[i], g2 = j.d2[i], g3 = j.d3[i], g4 = j.d4[i];
    s[0][i] = -25.0 * G4 * g1 * g1;
    s[1][i] = -10.0 * F * g2;
    s[2][i] = -15.0 * y[i] * G3 * g1 * g1 * g1;
    s[3][i] = -30.0 * y[i] * G4 * g1 * g2;
    s[4][i] = -5.0 * y[i] * F * g3;
    s[5][i] = 0.5 * q * G2 * g1 * g1 * g1 * g1;
    s[6][i] = 5.5 * q * G3 * g1 * g1 * g2;
    s[7][i] = 2.0 * q * G4 * g2 * g2;
    s[8][i] = 3.5 * q * G4 * g1 * g3;
    s[9][i] = 0.5 * q * F * g4;
  }
  return s;
}

// I_k = -int s_k g'' for every k; this reproduces the ten integrals with
// their printed constants (e.g. I_1 = 25 int (1+g)^4 (g')^2 g'').
Interactions integrals_from(const Jet& j, const Grid& grid) {
  const auto s = summands_from(j, grid.nodes());
  Interactions out{};
  std::vector<double> prod(grid.size());
  for (std::size_t k = 0; k < kSummands; ++k) {
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = -s[k][i] * j.d2[i];
    out[k] = integrate(grid, prod);
  }
  return out;
}

double energy_from(const Jet& j, const Grid& grid) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = j.d1[i] * j.d1[i];
  return 0.5 * integrate(grid, v);
}

double dissipation_from(const Jet& j, const Grid& grid) {
  const auto y = grid.nodes();
  std::vector<double> a(grid.size()), b(grid.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = j.d2[i] * j.d2[i];
    b[i] = (1.0 - y[i] * y[i]) * j.d3[i] * j.d3[i];
  }
  return 8.0 * integrate(grid, a) + 0.5 * integrate(grid, b);
}

double boundary_from(const Jet& j) {
  return 2.0 * (j.d2.back() * j.d2.back() + j.d2.front() * j.d2.front());
}

PerturbationField midpoint(const PerturbationField& a, const PerturbationField& b) {
  require_same_grid(a.grid(), b.field());
  std::vector<double> m(a.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = 0.5 * (a.values()[i] + b.values()[i]);
  return PerturbationField(Field(a.grid_ptr(), std::move(m)), 0.5 * (a.time() + b.time()));
}

}  // namespace

std::array<std::vector<double>, kSummands> nonlinear_summands(const PerturbationField& g) {
  return summands_from(jet(g), g.grid().nodes());
}

Field apply_nonlinear(const PerturbationField& g) {
  const auto s = nonlinear_summands(g);
  std::vector<double> out(g.size(), 0.0);
  for (const auto& term : s)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += term[i];
  return Field(g.grid_ptr(), std::move(out));
}

double energy(const PerturbationField& g) { return energy_from(jet(g), g.grid()); }

double dissipation(const PerturbationField& g) { return dissipation_from(jet(g), g.grid()); }

Interactions integrals_I(const PerturbationField& g) { return integrals_from(jet(g), g.grid()); }

double boundary_term(const PerturbationField& g) {
  const Grid& grid = g.grid();
  const Matrix& d2 = grid.diff(2);
  const double left = kernels::dot(d2.row(0), g.values());
  const double right = kernels::dot(d2.row(grid.size() - 1), g.values());
  return 2.0 * (left * left + right * right);
}

EnergyReport energy_report(const PerturbationField& g) {
  const Jet j = jet(g);
  EnergyReport r;
  r.E = energy_from(j, g.grid());
  r.D = dissipation_from(j, g.grid());
  r.I = integrals_from(j, g.grid());
  r.B = boundary_from(j);
  // dense sample plus the nodes themselves
  r.sup_g = std::max(kernels::max_abs(dense_sample(g.grid(), j.g)), kernels::max_abs(j.g));
  r.sup_dg = std::max(kernels::max_abs(dense_sample(g.grid(), j.d1)), kernels::max_abs(j.d1));
  return r;
}

double balance_residual(const PerturbationField& now, const PerturbationField& next, double dt,
                        Forcing forcing) {
  if (!(dt > 0.0)) throw ArgumentError("balance residual needs dt > 0");
  const PerturbationField mid = midpoint(now, next);
  const Jet j = jet(mid);
  const Grid& grid = mid.grid();
  double sum_i = 0.0;
  for (double v : integrals_from(j, grid)) sum_i += v;
  const double dEdt = (energy(next) - energy(now)) / dt;
  return std::fabs(dEdt + dissipation_from(j, grid) + boundary_from(j) -
                   forcing_sign(forcing) * sum_i);
}

double balance_scale(const PerturbationField& now, const PerturbationField& next) {
  const PerturbationField mid = midpoint(now, next);
  const Jet j = jet(mid);
  double s = dissipation_from(j, mid.grid()) + boundary_from(j);
  for (double v : integrals_from(j, mid.grid())) s += std::fabs(v);
  return s;
}

IbpResiduals check_ibp_identities(const PerturbationField& g) {
  const Interactions I = integrals_I(g);
  IbpResiduals r;
  r.r1 = std::fabs(I[3] + (120.0 / 11.0) * I[6] + 7.5 * I[7] + (60.0 / 7.0) * I[8]);
  r.r2 = std::fabs(I[4] + 0.25 * I[1] + (5.0 / 12.0) * I[3]);
  r.scale = 1.0;
  for (double v : I) r.scale += std::fabs(v);
  return r;
}

}  // namespace tfe::model
