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

#include <Eigen/Dense>

#include <cmath>

#include "tfe/evolution.hpp"

namespace tfe::evolution {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Each distinct (lead, dt) pair costs one factorization; with halving and
// geometric growth the set of step sizes is unbounded, so keep only a few.
constexpr std::size_t kCacheLimit = 16;
constexpr double kMinRcond = 1e-15;

}  // namespace

struct Stepper::Factorization {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
};

Stepper::Stepper(GridPtr grid, model::Forcing forcing, bool include_nonlinear)
    : grid_(std::move(grid)), forcing_(forcing), include_nonlinear_(include_nonlinear) {
  if (!grid_) throw ArgumentError("stepper: null grid");
  l_ = model::linear_operator_matrix(*grid_);
}

const Stepper::Factorization& Stepper::factor(double lead, double dt) {
  const auto key = std::make_pair(lead, dt);
  if (auto it = cache_.find(key); it != cache_.end()) return *it->second;
  if (cache_.size() >= kCacheLimit) cache_.clear();

  const std::size_t n = grid_->size();
  Eigen::Map<const RowMatrix> l(l_.data(), n, n);
  Eigen::MatrixXd a = dt * l;
  a.diagonal().array() += lead;
  for (Eigen::Index i : {Eigen::Index{0}, static_cast<Eigen::Index>(n - 1)}) {
    a.row(i).setZero();
    a(i, i) = 1.0;
  }
  auto f = std::make_shared<Factorization>();
  f->lu.compute(a);
  const double rcond = f->lu.rcond();
  if (!(rcond > kMinRcond))
    throw DiscretizationError("stepper: implicit system is numerically singular");
  return *cache_.emplace(key, std::move(f)).first->second;
}

std::vector<double> Stepper::forcing_term(const model::PerturbationField& g) const {
  if (!include_nonlinear_) return std::vector<double>(g.size(), 0.0);
  const double s = model::forcing_sign(forcing_);
  const Field n = model::apply_nonlinear(g);
  std::vector<double> out(n.values().begin(), n.values().end());
  for (double& v : out) v *= s;
  return out;
}

model::PerturbationField Stepper::solve(const Factorization& f, std::vector<double> rhs,
                                        double time) const {
  const std::size_t n = rhs.size();
  rhs.front() = 0.0;
  rhs.back() = 0.0;
  Eigen::Map<const Eigen::VectorXd> b(rhs.data(), n);
  Eigen::VectorXd x = f.lu.solve(b);
  std::vector<double> out(x.data(), x.data() + n);
  out.front() = 0.0;
  out.back() = 0.0;
  for (double v : out) {
    if (!std::isfinite(v)) throw StepFailure("step produced non-finite values");
    if (1.0 + v <= 0.0) throw StepFailure("step lost positivity of 1 + g");
  }
  return model::PerturbationField(Field(grid_, std::move(out)), time);
}

model::PerturbationField Stepper::step(const model::PerturbationField& g, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ArgumentError("step: dt must be positive");
  if (g.grid_ptr() != grid_) require_same_grid(*grid_, g.field());
  auto rhs = forcing_term(g);
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = g.values()[i] + dt * rhs[i];
  return solve(factor(1.0, dt), std::move(rhs), g.time() + dt);
}

model::PerturbationField Stepper::step_sbdf2(const model::PerturbationField& previous,
                                             const model::PerturbationField& g, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ArgumentError("step: dt must be positive");
  if (g.grid_ptr() != grid_) require_same_grid(*grid_, g.field());
  if (previous.grid_ptr() != grid_) require_same_grid(*grid_, previous.field());
  const auto n0 = forcing_term(g);
  const auto n1 = forcing_term(previous);
  std::vector<double> rhs(n0.size());
  for (std::size_t i = 0; i < rhs.size(); ++i)
    rhs[i] = 2.0 * g.values()[i] - 0.5 * previous.values()[i] + dt * (2.0 * n0[i] - n1[i]);
  return solve(factor(1.5, dt), std::move(rhs), g.time() + dt);
}

model::PerturbationField step(const model::PerturbationField& g, double dt, model::Forcing forcing) {
  Stepper stepper(g.grid_ptr(), forcing);
  return stepper.step(g, dt);
}

}  // namespace tfe::evolution
