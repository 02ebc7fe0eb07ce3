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

// Transformed thin-film evolution in mass-Lagrangian coordinates: the
// linear operator L, the ten-summand nonlinearity N, the energy functionals
// and the interaction integrals obtained by testing N against -g''.

#include <array>
#include <cstddef>

#include "tfe/spectral.hpp"

namespace tfe::model {

/// Perturbation g = G - 1 of the inverse Lagrangian stretch G = 1 / Z_y.
/// Invariants: |g(+-1)| <= kBoundaryTolerance, 1 + g > 0, finite samples.
class PerturbationField {
 public:
  static constexpr double kBoundaryTolerance = 1e-12;

  /// Throws DomainError when the Dirichlet condition fails and
  /// PositivityError when 1 + g <= 0 somewhere.
  PerturbationField(Field g, double time = 0.0);

  const Field& field() const { return g_; }
  const Grid& grid() const { return *g_.grid(); }
  const GridPtr& grid_ptr() const { return g_.grid(); }
  std::span<const double> values() const { return g_.values(); }
  double time() const { return time_; }
  std::size_t size() const { return g_.size(); }

 private:
  Field g_;
  double time_;
};

/// g and its spectral derivatives up to order four, at every node.
struct Jet {
  std::vector<double> g, d1, d2, d3, d4;
};

Jet jet(const PerturbationField& g);

/// L g = -10 g'' - 5 y g''' + (1 - y^2)/2 g''''.
Field apply_linear(const PerturbationField& g);

/// Collocation matrix of L on the grid (all rows, boundary rows included).
Matrix linear_operator_matrix(const Grid& grid);

inline constexpr std::size_t kSummands = 10;

/// The ten summands of N(g), in their natural order.
std::array<std::vector<double>, kSummands> nonlinear_summands(const PerturbationField& g);

/// N(g) = sum of the ten summands.
Field apply_nonlinear(const PerturbationField& g);

/// E = 1/2 ||g'||_2^2.
double energy(const PerturbationField& g);

/// D = 8 ||g''||_2^2 + 1/2 ||sqrt(1-y^2) g'''||_2^2.
double dissipation(const PerturbationField& g);

using Interactions = std::array<double, kSummands>;

/// I_1..I_10 (index 0..9).
Interactions integrals_I(const PerturbationField& g);

/// B = 2 [ (g''(1))^2 + (g''(-1))^2 ], endpoint rows of the second-order matrix.
double boundary_term(const PerturbationField& g);

struct EnergyReport {
  double E = 0.0;
  double D = 0.0;
  Interactions I{};
  double B = 0.0;
  double sup_g = 0.0;
  double sup_dg = 0.0;
};

EnergyReport energy_report(const PerturbationField& g);

/// Sign s of the forcing in g_t + L g = s N(g), N the ten-summand expression.
///
/// Expanding G_t + G^2 d_y((G d_y)^3 (u_inf G)) = 0 with G = 1 + g gives
/// g_t + L g = -N(g), so minus_n is the thin-film dynamics: the reconstructed
/// positions then obey Z_t = u_xxx(Z). plus_n evolves with +N.
enum class Forcing { minus_n, plus_n };

constexpr double forcing_sign(Forcing f) { return f == Forcing::minus_n ? -1.0 : 1.0; }

/// Along g_t + L g = s N(g) with g(+-1) = 0 one has exactly
///   dE/dt + D + B - s * sum_k I_k = 0.
/// Returns |(E(next) - E(now))/dt + D(mid) + B(mid) - s * sum_k I_k(mid)|
/// with mid the average of the two states.
double balance_residual(const PerturbationField& now, const PerturbationField& next, double dt,
                        Forcing forcing = Forcing::minus_n);

/// Scale used to turn balance residuals into relative ones:
/// D + B + sum |I_k| at the midpoint.
double balance_scale(const PerturbationField& now, const PerturbationField& next);

struct IbpResiduals {
  /// |I4 + (120/11) I7 + (15/2) I8 + (60/7) I9|
  double r1 = 0.0;
  /// |I5 + (1/4) I2 + (5/12) I4|
  double r2 = 0.0;
  /// 1 + sum |I_k|
  double scale = 1.0;
};

/// Integration-by-parts identities among the interaction integrals. Both
/// residuals vanish for every g with g(+-1) = 0. The second comes from
/// I5 = (5/2) int y F d_y[(g'')^2] with F = (1+g)^5 - 1 vanishing at +-1:
/// I5 = -(5/2) int F (g'')^2 - (25/2) int y (1+g)^4 g' (g'')^2.
IbpResiduals check_ibp_identities(const PerturbationField& g);

}  // namespace tfe::model
