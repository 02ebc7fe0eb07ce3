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

#include <boost/math/tools/roots.hpp>

#include "tfe/errors.hpp"
#include "tfe/kernels.hpp"
#include "tfe/transform.hpp"

namespace tfe::transform {

namespace {

constexpr int kRootDigits = 52;
constexpr std::uintmax_t kRootIterations = 200;

void require_positive(const model::PerturbationField& g) {
  for (double v : g.values())
    if (!(1.0 + v > 0.0)) throw PositivityError("1 + g <= 0: Lagrangian map not invertible");
}

void require_increasing(std::span<const double> z) {
  for (std::size_t i = 1; i < z.size(); ++i)
    if (!(z[i] > z[i - 1])) throw InvalidProfileError("cumulative mass is not monotone");
}

}  // namespace

LagrangianData eulerian_to_lagrangian(const EulerianProfile& u0, const GridPtr& grid) {
  if (std::fabs(u0.mass() - kSteadyMass) > kNormalizationTolerance ||
      std::fabs(u0.center()) > kNormalizationTolerance)
    throw InvalidProfileError("profile is not normalized (need M = 2/3, center 0; got M = " +
                              std::to_string(u0.mass()) + ", mu = " + std::to_string(u0.center()) +
                              ")");
  const double err = std::max(std::fabs(std::fabs(u0.slope_left()) - 1.0),
                              std::fabs(std::fabs(u0.slope_right()) - 1.0));
  if (err > kSlopeRejectTolerance)
    throw ContactAngleError("edge slopes " + std::to_string(u0.slope_left()) + ", " +
                            std::to_string(u0.slope_right()) + " violate |u_x| = 1");

  const auto y = grid->nodes();
  const std::size_t n = grid->size();
  std::vector<double> z(n), g(n, 0.0);
  const double lm = u0.lambda_minus();
  const double lp = u0.lambda_plus();
  z.front() = lm;
  z.back() = lp;
  for (std::size_t j = 1; j + 1 < n; ++j) {
    // Mass of u_inf on the nearer side of y, written without cancellation.
    const bool left = y[j] <= 0.0;
    const double s = left ? 1.0 + y[j] : 1.0 - y[j];
    const double target = 0.5 * (s * s - s * s * s / 3.0);
    auto residual = [&](double x) {
      const double m = left ? u0.mass_left_of(x) - target : target - u0.mass_right_of(x);
      return std::make_pair(m, u0.height(x));
    };
    const double guess = lm + 0.5 * (y[j] + 1.0) * (lp - lm);
    std::uintmax_t iters = kRootIterations;
    z[j] = boost::math::tools::newton_raphson_iterate(residual, guess, lm, lp, kRootDigits, iters);
    const double h = u0.height(z[j]);
    if (!(h > 0.0)) throw InvalidProfileError("height vanishes inside the support");
    g[j] = h / steady_height(y[j]) - 1.0;
  }
  require_increasing(z);

  LagrangianData out{LagrangianMap{Field(grid, std::move(z)), lm, lp},
                     model::PerturbationField(Field(grid, std::move(g)), 0.0), err,
                     err > kSlopeWarnTolerance};
  return out;
}

LagrangianMap reconstruct_map(const model::PerturbationField& g) {
  require_positive(g);
  const Grid& grid = g.grid();
  const auto y = grid.nodes();
  std::vector<double> inv(g.size());
  for (std::size_t i = 0; i < inv.size(); ++i) inv[i] = 1.0 / (1.0 + g.values()[i]);
  std::vector<double> z = cumulative_integral(grid, inv);
  std::vector<double> weighted(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) weighted[i] = (1.0 - y[i] * y[i]) * z[i];
  // int (1 - y^2) dy = 4/3
  const double c = -0.75 * integrate(grid, weighted);
  for (double& v : z) v += c;
  const double lm = z.front();
  const double lp = z.back();
  return LagrangianMap{Field(g.grid_ptr(), std::move(z)), lm, lp};
}

EulerianData lagrangian_to_eulerian(const model::PerturbationField& g) {
  LagrangianMap map = reconstruct_map(g);
  const GridPtr grid = g.grid_ptr();
  const auto y = grid->nodes();
  std::vector<double> h(g.size());
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = steady_height(y[i]) * (1.0 + g.values()[i]);
  Field height(grid, h);

  // x -> y by inverting the Z interpolant; Z' = 1/(1+g) > 0 keeps it monotone.
  auto zvals = std::make_shared<std::vector<double>>(map.Z.values().begin(), map.Z.values().end());
  auto gvals = std::make_shared<std::vector<double>>(g.values().begin(), g.values().end());
  auto hvals = std::make_shared<std::vector<double>>(std::move(h));
  const Field slope = eulerian_derivatives(g, 1);
  auto svals = std::make_shared<std::vector<double>>(slope.values().begin(), slope.values().end());
  auto locate = [grid, zvals, gvals](double x) {
    auto res = [&](double t) {
      const double tc = std::clamp(t, -1.0, 1.0);
      return std::make_pair(interpolate(*grid, *zvals, tc) - x,
                            1.0 / (1.0 + interpolate(*grid, *gvals, tc)));
    };
    std::uintmax_t iters = kRootIterations;
    return boost::math::tools::newton_raphson_iterate(res, 0.0, -1.0, 1.0, kRootDigits, iters);
  };
  auto u = [grid, hvals, locate](double x) { return interpolate(*grid, *hvals, locate(x)); };
  auto du = [grid, svals, locate](double x) { return interpolate(*grid, *svals, locate(x)); };
  EulerianProfile profile = EulerianProfile::analytic(map.lambda_minus, map.lambda_plus, u, du);
  return EulerianData{std::move(map), std::move(height), std::move(profile)};
}

Field eulerian_derivatives(const model::PerturbationField& g, int k) {
  if (k < 1 || k > 3) throw DomainError("Eulerian derivative order must be 1..3");
  require_positive(g);
  // Expanded on the jet of g with the steady derivatives -y, -1, 0 inserted
  // exactly, so g = 0 gives u_x = -y and u_xxx = 0 without rounding.
  // With A = G d_y and P = d_y(u_inf G):
  //   A(u_inf G)   = G P
  //   A^2(u_inf G) = G g' P + G^2 P'
  //   A^3(u_inf G) = G [(g'^2 + G g'') P + 3 G g' P' + G^2 P'']
  const model::Jet j = model::jet(g);
  const auto y = g.grid().nodes();
  const std::size_t n = g.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double G = 1.0 + j.g[i];
    const double u = steady_height(y[i]), du = -y[i];
    const double g1 = j.d1[i], g2 = j.d2[i], g3 = j.d3[i];
    const double P = du * G + u * g1;
    const double P1 = -G + 2.0 * du * g1 + u * g2;
    const double P2 = -3.0 * g1 + 3.0 * du * g2 + u * g3;
    switch (k) {
      case 1: out[i] = G * P; break;
      case 2: out[i] = G * g1 * P + G * G * P1; break;
      default: out[i] = G * ((g1 * g1 + G * g2) * P + 3.0 * G * g1 * P1 + G * G * P2); break;
    }
  }
  return Field(g.grid_ptr(), std::move(out));
}

ContactFormulas contact_point_formulas(const model::PerturbationField& g) {
  require_positive(g);
  const Grid& grid = g.grid();
  const auto y = grid.nodes();
  std::vector<double> a(g.size()), b(g.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double gi = g.values()[i];
    a[i] = 1.0 / (1.0 + gi);
    b[i] = (y[i] - y[i] * y[i] * y[i] / 3.0) * gi / (1.0 + gi);
  }
  return ContactFormulas{integrate(grid, a), -1.5 * integrate(grid, b)};
}

Moments reconstructed_moments(const model::PerturbationField& g, const LagrangianMap& map) {
  const Grid& grid = g.grid();
  require_same_grid(grid, map.Z);
  const auto y = grid.nodes();
  const std::vector<double> zy = grid.diff(1).apply(map.Z.values());
  std::vector<double> m(g.size()), c(g.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double h = steady_height(y[i]) * (1.0 + g.values()[i]);
    m[i] = h * zy[i];
    c[i] = map.Z[i] * h * zy[i];
  }
  return Moments{integrate(grid, m), integrate(grid, c)};
}

}  // namespace tfe::transform
