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
#include <optional>

#include "tfe/evolution.hpp"
#include "tfe/transform.hpp"

namespace tfe::evolution {

void StepperConfig::validate() const {
  if (!(dt_min > 0.0)) throw ArgumentError("dt_min must be positive");
  if (!(dt0 > dt_min)) throw ArgumentError("dt0 must exceed dt_min");
  if (!(dt_max >= dt0)) throw ArgumentError("dt_max must be at least dt0");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ArgumentError("t_end must be positive");
  if (!(balance_tol > 0.0)) throw ArgumentError("balance_tol must be positive");
  if (!(grow_factor >= 1.0)) throw ArgumentError("grow_factor must be >= 1");
  if (snapshot_stride == 0) throw ArgumentError("snapshot_stride must be positive");
}

void TrajectoryRecord::append(const model::PerturbationField& g) {
  const auto r = model::energy_report(g);
  const auto map = transform::reconstruct_map(g);
  const auto m = transform::reconstructed_moments(g, map);
  times.push_back(g.time());
  E.push_back(r.E);
  D.push_back(r.D);
  B.push_back(r.B);
  for (std::size_t k = 0; k < model::kSummands; ++k) I[k].push_back(r.I[k]);
  lambda_minus.push_back(map.lambda_minus);
  lambda_plus.push_back(map.lambda_plus);
  sup_g.push_back(r.sup_g);
  mass_residual.push_back(std::abs(m.mass - transform::kSteadyMass));
  center_residual.push_back(std::abs(m.center));
}

void TrajectoryRecord::validate() const {
  const std::size_t n = times.size();
  bool ok = E.size() == n && D.size() == n && B.size() == n && lambda_minus.size() == n &&
            lambda_plus.size() == n && sup_g.size() == n && mass_residual.size() == n &&
            center_residual.size() == n;
  for (const auto& s : I) ok = ok && s.size() == n;
  if (!ok) throw ConsistencyError("trajectory record: series lengths disagree");
  for (std::size_t i = 1; i < n; ++i)
    if (!(times[i] > times[i - 1]))
      throw ConsistencyError("trajectory record: times not strictly increasing");
}

EvolveResult evolve(const model::PerturbationField& g0, const StepperConfig& cfg) {
  cfg.validate();
  EvolveResult out;
  Stepper stepper(g0.grid_ptr(), cfg.forcing);

  model::PerturbationField g(g0.field(), 0.0);
  std::optional<model::PerturbationField> previous;
  double previous_dt = 0.0;
  double dt = cfg.dt0;
  std::size_t clean = 0;
  std::size_t accepted = 0;

  auto snapshot = [&](const model::PerturbationField& s) {
    auto v = s.values();
    out.record.snapshots.push_back({s.time(), {v.begin(), v.end()}});
  };
  out.record.append(g);
  snapshot(g);

  const double t_stop = cfg.t_end * (1.0 - 1e-14);
  while (g.time() < t_stop) {
    if (accepted + out.rejected_steps >= cfg.max_steps) {
      out.aborted = true;
      out.abort_reason = "step budget exhausted";
      break;
    }
    const double h = std::min(dt, cfg.t_end - g.time());
    std::optional<model::PerturbationField> next;
    double rel = 0.0;
    try {
      const bool second = cfg.scheme == Scheme::sbdf2 && previous && previous_dt == h;
      next.emplace(second ? stepper.step_sbdf2(*previous, g, h) : stepper.step(g, h));
      const double res = model::balance_residual(g, *next, h, cfg.forcing);
      const double scale = model::balance_scale(g, *next);
      rel = res == 0.0 ? 0.0 : res / std::max(scale, 1e-300);
      if (!(rel <= cfg.balance_tol)) next.reset();
    } catch (const StepFailure&) {
      next.reset();
    } catch (const NumericalError&) {
      next.reset();
    }

    if (!next) {
      ++out.rejected_steps;
      previous.reset();
      clean = 0;
      dt = 0.5 * h;
      if (dt < cfg.dt_min) {
        out.aborted = true;
        out.abort_reason = "step size fell below dt_min at t = " + std::to_string(g.time());
        break;
      }
      continue;
    }

    previous.emplace(g);
    previous_dt = h;
    g = std::move(*next);
    ++accepted;
    out.record.append(g);
    out.step_balance.push_back(rel);
    out.step_sizes.push_back(h);
    if (accepted % cfg.snapshot_stride == 0) snapshot(g);

    // The final step may be shortened to hit t_end; keep dt as it was.
    if (h == dt && ++clean >= cfg.grow_after) {
      dt = std::min(dt * cfg.grow_factor, cfg.dt_max);
      clean = 0;
    }
  }
  if (out.record.snapshots.back().t != g.time()) snapshot(g);
  return out;
}

}  // namespace tfe::evolution
