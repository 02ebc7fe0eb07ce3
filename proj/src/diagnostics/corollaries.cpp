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

#include "tfe/diagnostics.hpp"
#include "tfe/inequalities.hpp"
#include "tfe/kernels.hpp"
#include "tfe/transform.hpp"

namespace tfe::diagnostics {

namespace {

constexpr double kConvergedFloor = 1e-14;
constexpr double kRateFraction = 0.9;

model::PerturbationField snapshot_field(const evolution::Snapshot& s, const GridPtr& grid) {
  return model::PerturbationField(Field(grid, s.g), s.t);
}

double dense_sup(const Grid& grid, std::span<const double> v) {
  return std::max(kernels::max_abs(dense_sample(grid, v)), kernels::max_abs(v));
}

Check rate_check(std::string name, std::span<const double> t, std::span<const double> v,
                 double gamma_fit, evolution::Window window) {
  Check c;
  c.name = std::move(name);
  c.threshold = kRateFraction * gamma_fit / 2.0;
  bool any = false;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] >= window.begin && t[i] <= window.end && v[i] > kConvergedFloor) any = true;
  if (!any) {
    c.skipped = true;
    c.detail = "converged below rounding floor";
    return c;
  }
  try {
    const auto fit = evolution::fit_log_linear(t, v, window, kConvergedFloor);
    c.value = fit.gamma;
    c.passed = fit.gamma >= c.threshold;
    c.detail = "fitted rate";
  } catch (const InsufficientDataError& e) {
    c.passed = false;
    c.detail = e.what();
  }
  return c;
}

}  // namespace

SnapshotSeries snapshot_series(const evolution::TrajectoryRecord& record, const GridPtr& grid) {
  SnapshotSeries out;
  const auto y = grid->nodes();
  std::vector<double> w(grid->size());
  for (const auto& s : record.snapshots) {
    const auto g = snapshot_field(s, grid);
    const auto v = g.values();
    out.t.push_back(s.t);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = 0.5 * (1.0 - y[i] * y[i]) * v[i];
    out.eulerian_deviation.push_back(dense_sup(*grid, w));
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = v[i] / (1.0 + v[i]);
    out.stretch_deviation.push_back(dense_sup(*grid, w));

    const auto map = transform::reconstruct_map(g);
    const auto f = transform::contact_point_formulas(g);
    out.formula_mismatch =
        std::max({out.formula_mismatch, std::abs(f.width - (map.lambda_plus - map.lambda_minus)),
                  std::abs(f.sum - (map.lambda_plus + map.lambda_minus))});
  }
  return out;
}

std::vector<Check> corollary_checks(const evolution::TrajectoryRecord& record,
                                    const GridPtr& grid, double gamma_fit,
                                    evolution::Window window) {
  const auto ss = snapshot_series(record, grid);
  std::vector<double> contact(record.size());
  for (std::size_t i = 0; i < contact.size(); ++i)
    contact[i] = std::abs(record.lambda_plus[i] - 1.0) + std::abs(record.lambda_minus[i] + 1.0);

  std::vector<Check> out;
  out.push_back(rate_check("eulerian_deviation_rate", ss.t, ss.eulerian_deviation, gamma_fit, window));
  out.push_back(rate_check("contact_point_rate", record.times, contact, gamma_fit, window));
  out.push_back(rate_check("stretch_deviation_rate", ss.t, ss.stretch_deviation, gamma_fit, window));
  Check x;
  x.name = "contact_formula_crosscheck";
  x.value = ss.formula_mismatch;
  x.threshold = 1e-10;
  x.passed = ss.formula_mismatch <= x.threshold;
  out.push_back(x);
  return out;
}

Prop21Residuals prop21_check(const evolution::TrajectoryRecord& record, const GridPtr& grid,
                             double t_min) {
  Prop21Residuals r;
  const auto& snaps = record.snapshots;
  const std::size_t n = grid->size();
  std::vector<model::PerturbationField> g;
  std::vector<std::vector<double>> z;
  for (const auto& s : snaps) {
    g.push_back(snapshot_field(s, grid));
    const auto map = transform::reconstruct_map(g.back());
    z.emplace_back(map.Z.values().begin(), map.Z.values().end());

    const auto zy = grid->diff(1).apply(z.back());
    const auto v = g.back().values();
    for (std::size_t i = 1; i + 1 < n; ++i)
      r.stretch = std::max(r.stretch, std::abs(zy[i] * (1.0 + v[i]) - 1.0));
  }
  for (std::size_t k = 1; k + 1 < snaps.size(); ++k) {
    const double h0 = snaps[k].t - snaps[k - 1].t, h1 = snaps[k + 1].t - snaps[k].t;
    if (!(h0 > 0.0 && h1 > 0.0) || snaps[k - 1].t < t_min) continue;
    const auto uxxx = transform::eulerian_derivatives(g[k], 3);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double zt =
          (h0 * h0 * z[k + 1][i] - h1 * h1 * z[k - 1][i] + (h1 * h1 - h0 * h0) * z[k][i]) /
          (h0 * h1 * (h0 + h1));
      r.transport = std::max(r.transport, std::abs(zt - uxxx[i]));
    }
    ++r.triples;
  }
  return r;
}

bool CertificationReport::certified() const {
  if (gamma_fit < 0.0) return false;
  for (const auto& c : checks)
    if (!c.skipped && !c.passed) return false;
  return true;
}

CertificationReport certify(const evolution::TrajectoryRecord& record, const GridPtr& grid,
                            std::optional<evolution::Window> window, double max_balance) {
  record.validate();
  CertificationReport rep;
  rep.max_balance = max_balance;
  for (std::size_t i = 0; i < record.size(); ++i) {
    rep.max_mass = std::max(rep.max_mass, record.mass_residual[i]);
    rep.max_center = std::max(rep.max_center, record.center_residual[i]);
  }
  const auto mon = energy_inequality_monitor(record);
  rep.a_calibrated = mon.a_calibrated;
  rep.b_calibrated = mon.b_calibrated;
  rep.prop21 = prop21_check(record, grid);

  auto add = [&](std::string name, bool passed, double value, double threshold,
                 std::string detail = {}) {
    rep.checks.push_back({std::move(name), passed, false, value, threshold, std::move(detail)});
  };
  auto skip = [&](std::string name, std::string detail) {
    rep.checks.push_back({std::move(name), true, true, 0.0, 0.0, std::move(detail)});
  };

  if (mon.vacuous) {
    skip("energy_decay_fit", "stationary record");
    skip("energy_envelope", "stationary record");
    skip("gronwall_witness", "stationary record");
  } else {
    rep.window = window.value_or(evolution::default_fit_window(record));
    try {
      const auto fit = evolution::fit_decay(record, rep.window);
      rep.gamma_fit = fit.gamma;
      rep.r_squared = fit.r_squared;
      add("energy_decay_fit", fit.r_squared > 0.99 && fit.gamma > 0.0, fit.r_squared, 0.99,
          "r^2 of log-linear fit");
      double worst = 0.0;
      const double e0 = record.E.front();
      for (std::size_t i = 0; i < record.size(); ++i) {
        const double t = record.times[i];
        if (t < rep.window.begin || t > rep.window.end) continue;
        worst = std::max(worst, record.E[i] / (e0 * std::exp(-fit.gamma * t)));
      }
      add("energy_envelope", worst <= 1.05, worst, 1.05, "max E(t) / (E(0) exp(-gamma t))");
      for (auto& c : corollary_checks(record, grid, fit.gamma, rep.window))
        rep.checks.push_back(std::move(c));
    } catch (const InsufficientDataError& e) {
      add("energy_decay_fit", false, 0.0, 0.99, e.what());
    }
    const auto w = inequalities::gronwall_witness(record, mon.a_calibrated, mon.b_calibrated);
    add("gronwall_witness", w.certified, w.worst_excess, 0.0, w.detail);
  }
  add("mass_conservation", rep.max_mass <= 1e-8, rep.max_mass, 1e-8);
  add("center_conservation", rep.max_center <= 1e-8, rep.max_center, 1e-8);
  add("stretch_identity", rep.prop21.stretch <= 1e-10, rep.prop21.stretch, 1e-10);
  return rep;
}

}  // namespace tfe::diagnostics
