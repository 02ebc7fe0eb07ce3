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

#include "tfe/inequalities.hpp"

namespace tfe::inequalities {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ArgumentError(std::string("decay rate: ") + what);
}

void check_common(double a, double b) {
  require(std::isfinite(a) && a >= 0.0, "a must be finite and >= 0");
  require(std::isfinite(b) && b > 0.0, "b must be positive");
}

void check_pair(double alpha, double beta) {
  require(std::isfinite(alpha) && alpha > 1.0, "alpha must exceed 1");
  require(std::isfinite(beta) && beta > 0.0, "beta must be positive");
}

}  // namespace

double DecayBudget::recompute() const {
  double sb = 0.0, sa = 0.0;
  for (double be : beta) sb += std::pow(threshold, be);
  for (double al : alpha) sa += std::pow(threshold, al - 1.0);
  return b * (1.0 - a * sb) - a * sa;
}

DecayBudget decay_rate(double a, double b, double alpha, double beta, double epsilon) {
  check_common(a, b);
  check_pair(alpha, beta);
  require(std::isfinite(epsilon) && epsilon > 0.0, "epsilon must be positive");
  DecayBudget d{a, b, {alpha}, {beta}, epsilon, 0.0, false};
  const double inner = 1.0 - a * std::pow(epsilon, beta);
  d.rate = b * inner - a * std::pow(epsilon, alpha - 1.0);
  d.valid = inner > 0.0 && d.rate > 0.0;
  return d;
}

DecayBudget decay_rate_two(double a, double b, double alpha1, double alpha2, double beta1,
                           double beta2, double c0) {
  check_common(a, b);
  check_pair(alpha1, beta1);
  check_pair(alpha2, beta2);
  require(std::isfinite(c0) && c0 >= 0.0, "c0 must be finite and >= 0");
  DecayBudget d{a, b, {alpha1, alpha2}, {beta1, beta2}, c0, 0.0, false};
  const double inner = 1.0 - a * (std::pow(c0, beta1) + std::pow(c0, beta2));
  d.rate = b * inner - a * (std::pow(c0, alpha1 - 1.0) + std::pow(c0, alpha2 - 1.0));
  d.valid = inner > 0.0 && d.rate > 0.0;
  return d;
}

double largest_valid_c0(double a, double b, double alpha1, double alpha2, double beta1,
                        double beta2, double lo, double hi, std::size_t points) {
  require(lo > 0.0 && hi > lo && points >= 2, "search grid must satisfy 0 < lo < hi");
  double best = 0.0;
  const double step = std::log(hi / lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double c0 = lo * std::exp(step * static_cast<double>(i));
    if (decay_rate_two(a, b, alpha1, alpha2, beta1, beta2, c0).valid) best = c0;
  }
  return best;
}

GronwallWitness gronwall_witness(const evolution::TrajectoryRecord& record, double a, double b) {
  GronwallWitness w;
  if (record.size() == 0) {
    w.detail = "empty record";
    return w;
  }
  const double e0 = record.E.front();
  w.max_energy = *std::max_element(record.E.begin(), record.E.end());
  if (w.max_energy == 0.0) {
    w.certified = true;
    w.rate = b;
    w.detail = "stationary trajectory";
    return w;
  }
  if (!(e0 > 0.0)) {
    w.detail = "E(0) = 0 but E later positive";
    return w;
  }
  try {
    w.threshold = e0 * (1.0 + 1e-9);
    const auto budget = decay_rate_two(a, b, kAlpha1, kAlpha2, kBeta1, kBeta2, w.threshold);
    w.rate = budget.rate;
    if (!budget.valid) {
      w.detail = "no positive rate at threshold E(0)";
      return w;
    }
  } catch (const ArgumentError& e) {
    w.detail = e.what();
    return w;
  }
  if (w.max_energy > w.threshold) {
    w.detail = "energy left the threshold ball";
    return w;
  }
  w.worst_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < record.size(); ++i) {
    if (!(record.E[i] > 0.0)) continue;
    const double excess = std::log(record.E[i] / e0) + 0.95 * w.rate * record.times[i];
    w.worst_excess = std::max(w.worst_excess, excess);
  }
  w.certified = w.worst_excess <= 1e-12;
  w.detail = w.certified ? "certified" : "energy above the exponential envelope";
  return w;
}

}  // namespace tfe::inequalities
