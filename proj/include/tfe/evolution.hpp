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

// Time integration of g_t + L g = s N(g), g(+-1) = 0, by implicit-explicit
// collocation: L implicit, N explicit, PDE rows at y = +-1 replaced by the
// Dirichlet constraints.

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tfe/errors.hpp"
#include "tfe/model.hpp"
#include "tfe/spectral.hpp"

namespace tfe::evolution {

enum class Scheme {
  /// (I + dt L) g1 = g0 + dt s N(g0); first order.
  backward_euler,
  /// (3/2 I + dt L) g1 = 2 g0 - g_{-1}/2 + dt s (2 N(g0) - N(g_{-1})); second
  /// order, started by one backward-Euler step.
  sbdf2,
};

struct StepperConfig {
  double dt0 = 1e-3;
  double t_end = 1.0;
  Scheme scheme = Scheme::backward_euler;
  /// Reject a step when |balance residual| / (D + B + sum|I_k|) exceeds this.
  double balance_tol = 1e-2;
  double dt_min = 1e-10;
  double dt_max = 1e-1;
  std::size_t snapshot_stride = 10;
  /// Grow dt by grow_factor after grow_after consecutive accepted steps.
  double grow_factor = 1.2;
  std::size_t grow_after = 10;
  std::size_t max_steps = 5'000'000;
  model::Forcing forcing = model::Forcing::minus_n;

  /// Throws ArgumentError unless dt0 > dt_min > 0, t_end > 0, balance_tol > 0.
  void validate() const;
};

struct Snapshot {
  double t = 0.0;
  std::vector<double> g;
};

/// Per-accepted-step diagnostic series; row 0 is the initial state.
struct TrajectoryRecord {
  std::vector<double> times, E, D, B;
  std::array<std::vector<double>, model::kSummands> I;
  std::vector<double> lambda_minus, lambda_plus, sup_g, mass_residual, center_residual;
  std::vector<Snapshot> snapshots;

  std::size_t size() const { return times.size(); }
  /// Appends the diagnostics of g (time taken from g.time()).
  void append(const model::PerturbationField& g);
  /// Throws ConsistencyError when times are not strictly increasing or the
  /// series lengths disagree.
  void validate() const;
};

/// Positivity loss or non-finite values after a step; the caller may retry
/// with a smaller dt.
class StepFailure : public Error {
 public:
  using Error::Error;
};

class Stepper {
 public:
  explicit Stepper(GridPtr grid, model::Forcing forcing = model::Forcing::minus_n,
                   bool include_nonlinear = true);

  model::PerturbationField step(const model::PerturbationField& g, double dt);
  model::PerturbationField step_sbdf2(const model::PerturbationField& previous,
                                      const model::PerturbationField& g, double dt);

  const Matrix& linear_matrix() const { return l_; }
  const GridPtr& grid() const { return grid_; }

 private:
  struct Factorization;
  const Factorization& factor(double lead, double dt);
  std::vector<double> forcing_term(const model::PerturbationField& g) const;
  model::PerturbationField solve(const Factorization& f, std::vector<double> rhs, double time) const;

  GridPtr grid_;
  model::Forcing forcing_;
  bool include_nonlinear_;
  Matrix l_;
  std::map<std::pair<double, double>, std::shared_ptr<Factorization>> cache_;
};

/// One backward-Euler step (builds a throwaway Stepper).
model::PerturbationField step(const model::PerturbationField& g, double dt,
                              model::Forcing forcing = model::Forcing::minus_n);

struct EvolveResult {
  TrajectoryRecord record;
  bool aborted = false;
  std::string abort_reason;
  std::size_t rejected_steps = 0;
  /// Relative balance residual of each accepted step (one per row after the first).
  std::vector<double> step_balance;
  std::vector<double> step_sizes;
};

/// Adaptive integration with balance-keyed step control. Never throws for
/// step failures: a dt underflow returns aborted = true with the partial
/// record.
EvolveResult evolve(const model::PerturbationField& g0, const StepperConfig& cfg);

struct Window {
  double begin = 0.0;
  double end = 0.0;
};

struct DecayFit {
  double gamma = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t samples = 0;
};

/// Least-squares line through (t, log v) for samples in the window with
/// v > floor; gamma = -slope. Throws InsufficientDataError below 4 samples.
DecayFit fit_log_linear(std::span<const double> t, std::span<const double> v, Window window,
                        double floor = 0.0);

DecayFit fit_decay(const TrajectoryRecord& record, Window window);

/// Second half of the span on which E stays above 1e-13.
Window default_fit_window(const TrajectoryRecord& record, double floor = 1e-13);

}  // namespace tfe::evolution
