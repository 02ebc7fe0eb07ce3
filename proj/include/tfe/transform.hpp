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

// Eulerian droplet profiles and the mass-Lagrangian change of variables
//   int_{lambda_-}^{Z(y)} u(x) dx = 1/2 int_{-1}^{y} (1 - s^2) ds.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "tfe/model.hpp"
#include "tfe/spectral.hpp"

namespace tfe::transform {

/// Steady droplet u_inf(x) = (1 - x^2)/2 on (-1, 1).
inline double steady_height(double x) { return 0.5 * (1.0 - x) * (1.0 + x); }

inline constexpr double kSteadyMass = 2.0 / 3.0;

/// Droplet height over its support. Outside [lambda_minus, lambda_plus] the
/// height is zero.
class EulerianProfile {
 public:
  using Height = std::function<double(double)>;

  /// Analytic height with its derivative. `breaks` are optional interior
  /// points where the height is not smooth (used to split quadratures).
  static EulerianProfile analytic(double lambda_minus, double lambda_plus, Height u, Height du,
                                  std::vector<double> breaks = {});

  /// Piecewise cubic Hermite interpolant of samples (x strictly increasing).
  /// The first and last abscissae are the contact points; the end values are
  /// taken as given (they are validated, not forced).
  static EulerianProfile from_samples(std::vector<double> x, std::vector<double> u);

  double lambda_minus() const { return lambda_minus_; }
  double lambda_plus() const { return lambda_plus_; }
  double height(double x) const;
  double slope(double x) const;
  double operator()(double x) const { return height(x); }

  /// M = int u dx and mu = int x u dx, by adaptive Gauss-Kronrod quadrature.
  double mass() const { return mass_; }
  double center() const { return center_; }
  /// u_x at lambda_minus (from the right) and at lambda_plus (from the left).
  double slope_left() const { return slope(lambda_minus_); }
  double slope_right() const { return slope(lambda_plus_); }

  /// int_{lambda_minus}^{x} u and int_{x}^{lambda_plus} u.
  double mass_left_of(double x) const;
  double mass_right_of(double x) const;

  /// Scale kappa and translation applied by normalize_profile (1 and 0 for
  /// profiles built directly).
  double applied_scale() const { return kappa_; }
  double applied_shift() const { return shift_; }

 private:
  EulerianProfile() = default;
  void finalize();
  double integrate_piecewise(const std::function<double(double)>& f, double a, double b) const;

  double lambda_minus_ = 0.0;
  double lambda_plus_ = 0.0;
  std::shared_ptr<const Height> u_;
  std::shared_ptr<const Height> du_;
  std::vector<double> breaks_;
  double mass_ = 0.0;
  double center_ = 0.0;
  double kappa_ = 1.0;
  double shift_ = 0.0;

  friend EulerianProfile normalize_profile(const EulerianProfile& raw);
};

/// Rescale by kappa = sqrt(M / (2/3)) with u -> kappa^{-1} u(kappa x), then
/// translate so that the center of mass is 0. Throws InvalidProfileError when
/// M <= 0.
EulerianProfile normalize_profile(const EulerianProfile& raw);

/// Lagrangian positions Z(y_j) of the grid's mass coordinates.
struct LagrangianMap {
  Field Z;
  double lambda_minus = 0.0;
  double lambda_plus = 0.0;
};

struct LagrangianData {
  LagrangianMap map;
  model::PerturbationField g;
  /// max(|u_x(lambda_-)| - 1|, ||u_x(lambda_+)| - 1|)
  double slope_error = 0.0;
  /// slope_error in (1e-6, 1e-3]: accepted, but outside the tight tolerance.
  bool slope_warning = false;
};

inline constexpr double kSlopeWarnTolerance = 1e-6;
inline constexpr double kSlopeRejectTolerance = 1e-3;
inline constexpr double kNormalizationTolerance = 1e-9;

/// Solves the cumulative-mass equation at every interior node and forms
/// g0 = u0(Z0)/u_inf - 1, with g0(+-1) = 0 imposed. Throws ContactAngleError
/// when the edge slopes miss |u_x| = 1 by more than 1e-3 and
/// InvalidProfileError for unnormalized or non-monotone data.
LagrangianData eulerian_to_lagrangian(const EulerianProfile& u0, const GridPtr& grid);

struct EulerianData {
  LagrangianMap map;
  /// u~(y_j) = u_inf(y_j) (1 + g(y_j)), the height at position Z(y_j).
  Field height;
  EulerianProfile profile;
};

/// Z = C + int_{-1}^{y} ds / (1 + g), with C fixing int (1 - y^2) Z dy = 0.
LagrangianMap reconstruct_map(const model::PerturbationField& g);

/// Map plus an evaluable Eulerian profile (positions inverted on the Z
/// interpolant). Throws PositivityError when 1 + g <= 0.
EulerianData lagrangian_to_eulerian(const model::PerturbationField& g);

/// (G d_y)^k (u_inf G), G = 1 + g: the k-th x-derivative of u at Z(y).
Field eulerian_derivatives(const model::PerturbationField& g, int k);

/// lambda_+ - lambda_- = int dy / (1 + g) and
/// lambda_+ + lambda_- = -(3/2) int (y - y^3/3) g / (1 + g) dy.
struct ContactFormulas {
  double width = 0.0;
  double sum = 0.0;
};
ContactFormulas contact_point_formulas(const model::PerturbationField& g);

/// Mass int u~ Z_y dy and center int Z u~ Z_y dy of the reconstructed droplet,
/// with Z_y the spectral derivative of the reconstructed positions.
struct Moments {
  double mass = 0.0;
  double center = 0.0;
};
Moments reconstructed_moments(const model::PerturbationField& g, const LagrangianMap& map);

/// Two-column (x u) text, whitespace separated, '#' starts a comment.
EulerianProfile read_profile(const std::string& path);

}  // namespace tfe::transform
